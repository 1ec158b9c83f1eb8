// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "covcat/functor.hpp"

namespace covcat {

struct StarSummand {
    ObjectIndex object = 0;  ///< the other end of the hom space
    std::vector<std::string> basis;
};

/// The star at an object b: every morphism with source b (the source star,
/// ⊕_y hom(b, y)) followed by every morphism with target b (the target
/// star, ⊕_y hom(y, b)). End(b) appears in both halves.
struct StarDecomposition {
    ObjectIndex object = 0;
    std::vector<StarSummand> source_star;
    std::vector<StarSummand> target_star;
    std::size_t source_dimension = 0;
    std::size_t target_dimension = 0;
    std::size_t total_dimension = 0;
};

[[nodiscard]] StarDecomposition star(const LinearCategory& c, ObjectIndex b);

/// Outgoing blocks live in the source star of the lift, incoming blocks in
/// its target star.
enum class StarSide { Outgoing, Incoming };

[[nodiscard]] std::string_view to_string(StarSide side);

/// F restricted to the morphisms between a lift x of b and the whole fibre
/// over another base object c:
///   Outgoing: ⊕_{y ∈ F⁻¹(c)} hom(x, y) → hom(b, c)
///   Incoming: ⊕_{y ∈ F⁻¹(c)} hom(y, x) → hom(c, b)
/// Columns run over the fibre in object order, each summand in basis order.
struct FibreBlock {
    StarSide side = StarSide::Outgoing;
    ObjectIndex lift = 0;
    ObjectIndex base = 0;   ///< F(lift)
    ObjectIndex other = 0;  ///< c
    std::vector<ObjectIndex> partners;  ///< fibre members with a non-zero summand
    std::vector<std::size_t> offsets;   ///< first column of each partner's summand
    Matrix matrix;
    std::optional<Matrix> inverse;

    [[nodiscard]] std::size_t source_dimension() const { return matrix.cols(); }
    [[nodiscard]] std::size_t target_dimension() const { return matrix.rows(); }
};

/// Evidence that a functor is a covering: the fibres and an invertible
/// matrix for every non-trivial fibre block.
struct CoveringCertificate {
    CoveringCertificate(LinearFunctor f, std::vector<std::vector<ObjectIndex>> fibres_by_base)
        : functor(std::move(f)), fibres(std::move(fibres_by_base)) {}

    LinearFunctor functor;
    std::vector<std::vector<ObjectIndex>> fibres;  ///< indexed by base object
    std::vector<FibreBlock> blocks;

    [[nodiscard]] const FibreBlock* find(StarSide side, ObjectIndex lift, ObjectIndex other) const;

private:
    friend struct CoveringBuilder;
    std::map<std::tuple<StarSide, ObjectIndex, ObjectIndex>, std::size_t> index_;
};

struct CoveringFailure {
    enum class Reason { NotSurjective, BlockNotInvertible, InvalidFunctor };
    Reason reason = Reason::NotSurjective;
    ObjectIndex missing_object = 0;     ///< NotSurjective: base object with an empty fibre
    std::optional<FibreBlock> block;    ///< BlockNotInvertible
    std::size_t rank = 0;
    std::string message;
};

[[nodiscard]] std::string_view to_string(CoveringFailure::Reason reason);

struct CoveringCheck {
    std::optional<CoveringCertificate> certificate;
    std::optional<CoveringFailure> failure;

    explicit operator bool() const { return certificate.has_value(); }
};

/// Decides whether `f` is a covering. On failure the witness is the first
/// offending block in (side, lift, other) order with Outgoing before
/// Incoming.
[[nodiscard]] CoveringCheck check_covering(const LinearFunctor& f);

/// Re-checks every block of a certificate against its functor.
[[nodiscard]] bool verify_certificate(const CoveringCertificate& certificate);

/// A covering with connected source has a connected target.
[[nodiscard]] bool prop_connected_check(const CoveringCertificate& certificate);

}  // namespace covcat
