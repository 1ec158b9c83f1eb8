// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "covcat/covering.hpp"
#include "covcat/functor.hpp"

namespace covcat {

/// C ×_B D for F: C → B and G: D → B. Objects are the pairs (x, y) with
/// Fx = Gy, named "(x,y)". The hom space from (x, y) to (x', y') is the
/// kernel of (φ, ψ) ↦ Fφ − Gψ on hom(x, x') ⊕ hom(y, y'), with its
/// canonical echelon basis over the concatenated coordinates.
struct FibreProduct {
    CategoryPtr category;
    LinearFunctor first_projection;   ///< onto C
    LinearFunctor second_projection;  ///< onto D
    std::vector<std::pair<ObjectIndex, ObjectIndex>> pairs;  ///< by object index of `category`
};

/// Throws PreconditionError(Mismatch) when the targets or fields differ.
[[nodiscard]] FibreProduct fibre_product(const LinearFunctor& f, const LinearFunctor& g);

/// Every hom matrix of g is a bijection onto the corresponding target hom,
/// including zero homs on both sides.
[[nodiscard]] bool is_fully_faithful(const LinearFunctor& g);

struct PullbackCovering {
    FibreProduct product;
    CoveringCertificate certificate;  ///< for product.second_projection
};

/// Pulls a covering back along a fully faithful functor. The covering
/// certificate of the second projection is computed, not assumed.
/// Throws PreconditionError when g is not fully faithful or f is not a
/// covering.
[[nodiscard]] PullbackCovering fullyfaithful_pullback(const LinearFunctor& f, const LinearFunctor& g);

}  // namespace covcat
