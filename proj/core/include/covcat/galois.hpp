// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covcat/covering.hpp"
#include "covcat/errors.hpp"
#include "covcat/fibre_product.hpp"
#include "covcat/functor.hpp"

namespace covcat {

/// The unique endofunctor H of the source with F∘H = F and H(from) = to, if
/// it exists. H is propagated along a breadth-first spanning tree by
/// transporting morphisms through the inverse fibre blocks, then checked
/// globally (functoriality, F∘H = F, invertibility).
///
/// Throws PreconditionError(NotConnected) when the source is disconnected.
[[nodiscard]] std::optional<LinearFunctor> lift_endofunctor(const CoveringCertificate& certificate,
                                                            ObjectIndex from, ObjectIndex to);

/// Aut₁(F): the invertible endofunctors H with F∘H = F, with their action
/// on objects.
struct DeckGroup {
    std::vector<LinearFunctor> elements;
    std::vector<std::vector<ObjectIndex>> action;      ///< action[g][x] = g(x)
    std::vector<std::vector<std::size_t>> products;    ///< products[g][h] = index of g∘h
    std::vector<std::size_t> inverses;
    std::size_t identity = 0;
    ObjectIndex anchor = 0;  ///< lifts were taken from this object

    [[nodiscard]] std::size_t order() const { return elements.size(); }
    /// No non-identity element fixes an object.
    [[nodiscard]] bool acts_freely() const;
    [[nodiscard]] bool is_transitive_on(std::span<const ObjectIndex> fibre) const;
};

/// Builds Aut₁(F) from the lifts of the least object of the least base
/// fibre, then verifies closure under composition and inverses.
/// Throws PreconditionError(NotConnected) for a disconnected source.
[[nodiscard]] DeckGroup deck_group(const CoveringCertificate& certificate);

/// A functor S: B → C with F∘S = 1_B.
struct Section {
    LinearFunctor functor;
};

/// The section through x, which exists iff the connected component of x
/// maps isomorphically onto the base. Throws PreconditionError(NotConnected)
/// when the base is disconnected.
[[nodiscard]] std::optional<Section> sections_through(const CoveringCertificate& certificate, ObjectIndex x);

struct TrivialityResult {
    bool trivial = false;
    Components components;
    std::vector<bool> component_isomorphic;  ///< per component of the source
    std::optional<std::size_t> first_failure;
    /// Present when trivial: B × E with E = component labels "0", "1", ...,
    /// and the isomorphism B × E → C that commutes with the projections.
    std::optional<CategoryWithFunctor> product;
    std::optional<LinearFunctor> comparison;
};

/// A covering of a connected base is trivial iff every connected component
/// of its source maps isomorphically onto the base.
/// Throws PreconditionError(NotConnected) for a disconnected base.
[[nodiscard]] TrivialityResult is_trivial_covering(const CoveringCertificate& certificate);

enum class GaloisStatus { NotConnected, NotCovering, NonGalois, Galois };
enum class GaloisMethod { Direct, FibreProduct };

[[nodiscard]] std::string_view to_string(GaloisStatus status);
[[nodiscard]] std::string_view to_string(GaloisMethod method);

struct GaloisVerdict {
    GaloisStatus status = GaloisStatus::NotCovering;
    GaloisMethod method = GaloisMethod::Direct;
    Components components;                      ///< of the source
    std::optional<CoveringCertificate> certificate;
    std::optional<CoveringFailure> covering_failure;
    std::vector<ObjectIndex> fibre;             ///< the fibre over the least base object
    std::optional<DeckGroup> group;             ///< Direct
    std::optional<CoveringFailure> square_failure;  ///< FibreProduct: pr₁ of F ×_B F is not a covering
    std::optional<TrivialityResult> square_triviality;
    std::size_t square_objects = 0;
    CategoryPtr square;                         ///< FibreProduct: F ×_B F
};

[[nodiscard]] GaloisVerdict is_galois(const LinearFunctor& f, GaloisMethod method);

/// C / G for a group G of automorphisms acting freely on objects. Orbits are
/// named by their least member x̂, and hom(x̄, ȳ) = ⊕_{y ∈ ȳ} hom(x̂, y).
struct Quotient {
    CategoryPtr category;
    LinearFunctor projection;
    std::vector<ObjectIndex> orbit_of;         ///< source object -> quotient object
    std::vector<ObjectIndex> representatives;  ///< quotient object -> least member
};

/// Throws PreconditionError(NotFree) when a non-identity element fixes an
/// object or the elements are not endofunctors of `c`.
[[nodiscard]] Quotient quotient_by_group(const CategoryPtr& c, std::span<const LinearFunctor> group);

struct StructureIso {
    DeckGroup group;
    Quotient quotient;
    LinearFunctor comparison;  ///< F′: C/Aut₁(F) → B
    bool unique = false;       ///< P is onto every quotient hom, so F′∘P = F pins F′ down
};

/// Throws PreconditionError unless f is a Galois covering.
[[nodiscard]] StructureIso structure_iso(const LinearFunctor& f);

struct UniversalityMember {
    bool pass = false;
    std::size_t product_objects = 0;
    std::optional<CoveringFailure> projection_failure;
    std::optional<TrivialityResult> triviality;
};

struct UniversalityReport {
    std::vector<UniversalityMember> members;
    bool universal_relative_to_family = false;
};

/// Tests u against each Galois covering in `family`: PASS iff the projection
/// of u ×_B F onto u's source is a trivial covering. This only certifies
/// universality relative to the supplied family.
/// Throws PreconditionError when u is not a connected covering or a member
/// is not Galois over the same base.
[[nodiscard]] UniversalityReport check_universal_against(const LinearFunctor& u,
                                                         std::span<const LinearFunctor> family);

}  // namespace covcat
