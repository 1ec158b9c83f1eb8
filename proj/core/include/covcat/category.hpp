// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "covcat/field.hpp"
#include "covcat/matrix.hpp"

namespace covcat {

using ObjectIndex = std::size_t;

/// Ordered (source, target) pair naming a hom space.
struct HomKey {
    ObjectIndex src = 0;
    ObjectIndex dst = 0;
    friend auto operator<=>(const HomKey&, const HomKey&) = default;
};

/// A finite k-linear category. Objects are kept in lexicographic order of
/// their names; hom spaces carry a fixed ordered basis and are absent when
/// zero. Composition is stored as structure constants: for basis f of
/// hom(x, y) and basis g of hom(y, z), the coordinates of g∘f in hom(x, z).
///
/// Instances are immutable; build them with CategoryBuilder.
class LinearCategory {
public:
    [[nodiscard]] const Field& field() const { return field_; }
    [[nodiscard]] std::size_t object_count() const { return objects_.size(); }
    [[nodiscard]] const std::vector<std::string>& objects() const { return objects_; }
    [[nodiscard]] const std::string& object_name(ObjectIndex x) const { return objects_.at(x); }
    [[nodiscard]] std::optional<ObjectIndex> find_object(std::string_view name) const;
    /// Throws std::out_of_range for unknown names.
    [[nodiscard]] ObjectIndex index_of(std::string_view name) const;

    [[nodiscard]] std::size_t dim(ObjectIndex src, ObjectIndex dst) const;
    [[nodiscard]] std::span<const std::string> basis(ObjectIndex src, ObjectIndex dst) const;
    /// Present (non-zero) hom spaces only.
    [[nodiscard]] const std::map<HomKey, std::vector<std::string>>& homs() const { return homs_; }
    [[nodiscard]] std::size_t total_dimension() const;

    /// Locates a basis morphism by name.
    struct BasisRef {
        HomKey hom;
        std::size_t index = 0;
    };
    [[nodiscard]] std::optional<BasisRef> find_basis(std::string_view name) const;

    [[nodiscard]] const Vector& identity(ObjectIndex x) const { return identities_.at(x); }
    [[nodiscard]] Vector basis_vector(ObjectIndex src, ObjectIndex dst, std::size_t i) const;
    [[nodiscard]] Vector zero(ObjectIndex src, ObjectIndex dst) const;

    /// Coordinates of g∘f for basis f = i of hom(x, y) and g = j of hom(y, z);
    /// nullptr when the product is zero.
    [[nodiscard]] const Vector* structure_constant(ObjectIndex x, ObjectIndex y, ObjectIndex z,
                                                   std::size_t i, std::size_t j) const;
    /// g∘f for arbitrary f in hom(x, y), g in hom(y, z).
    [[nodiscard]] Vector compose(ObjectIndex x, ObjectIndex y, ObjectIndex z, const Vector& g,
                                 const Vector& f) const;

    friend bool operator==(const LinearCategory& a, const LinearCategory& b);

private:
    friend class CategoryBuilder;
    using Triple = std::tuple<ObjectIndex, ObjectIndex, ObjectIndex>;

    explicit LinearCategory(Field field) : field_(field) {}

    Field field_;
    std::vector<std::string> objects_;
    std::map<HomKey, std::vector<std::string>> homs_;
    std::vector<Vector> identities_;
    /// (x, y, z) -> table indexed j * dim(x, y) + i; empty vectors mean zero.
    std::map<Triple, std::vector<Vector>> composition_;
};

using CategoryPtr = std::shared_ptr<const LinearCategory>;

/// Assembles a LinearCategory. Object names are sorted on construction, so
/// callers address objects by name or by the index reported by index_of().
class CategoryBuilder {
public:
    /// Throws std::invalid_argument on duplicate or empty names.
    CategoryBuilder(Field field, std::vector<std::string> objects);

    [[nodiscard]] const Field& field() const { return category_.field_; }
    [[nodiscard]] ObjectIndex index_of(std::string_view name) const { return category_.index_of(name); }
    [[nodiscard]] const std::vector<std::string>& objects() const { return category_.objects_; }

    /// An empty basis leaves the hom space absent.
    CategoryBuilder& set_hom(ObjectIndex src, ObjectIndex dst, std::vector<std::string> basis);
    CategoryBuilder& set_identity(ObjectIndex x, Vector coordinates);
    /// g∘f = result, for f = basis i of hom(x, y) and g = basis j of hom(y, z).
    CategoryBuilder& set_composition(ObjectIndex x, ObjectIndex y, ObjectIndex z, std::size_t i, std::size_t j,
                                     Vector result);

    /// Rename duplicated basis names by appending "#2", "#3", ... in hom order.
    CategoryBuilder& make_basis_names_unique();

    /// Throws std::invalid_argument when basis names repeat or a table entry
    /// refers to an absent hom space.
    [[nodiscard]] LinearCategory build() &&;

private:
    [[nodiscard]] std::size_t dim(ObjectIndex src, ObjectIndex dst) const { return category_.dim(src, dst); }

    LinearCategory category_;
};

/// One axiom failure found by validate_category / validate_functor.
struct Violation {
    enum class Kind {
        Structure,
        Associativity,
        LeftUnit,
        RightUnit,
        Centrality,
        ObjectMap,
        Dimension,
        ZeroHom,
        Identity,
        Composition,
    };
    Kind kind;
    std::string message;
    std::vector<std::string> witness;  ///< basis morphisms involved
};

[[nodiscard]] std::string_view to_string(Violation::Kind kind);

struct ValidationReport {
    std::vector<Violation> violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks associativity on every composable basis triple, two-sided units,
/// and centrality of each identity in its endomorphism algebra.
[[nodiscard]] ValidationReport validate_category(const LinearCategory& c);

/// One step (f, ε) of a walk. With sign +1 the step travels from
/// f's source to its target; with sign -1 it travels backwards.
struct WalkStep {
    ObjectIndex source = 0;  ///< s(f)
    ObjectIndex target = 0;  ///< t(f)
    Vector morphism;         ///< coordinates in hom(source, target)
    int sign = 1;

    [[nodiscard]] ObjectIndex start() const { return sign > 0 ? source : target; }
    [[nodiscard]] ObjectIndex end() const { return sign > 0 ? target : source; }
};

struct SignedWalk {
    ObjectIndex origin = 0;
    std::vector<WalkStep> steps;  ///< applied first to last

    [[nodiscard]] ObjectIndex destination() const { return steps.empty() ? origin : steps.back().end(); }
};

[[nodiscard]] bool is_nonzero_walk(const LinearCategory& c, const SignedWalk& walk);
/// Shortest non-zero walk from `from` to `to`, if one exists.
[[nodiscard]] std::optional<SignedWalk> find_walk(const LinearCategory& c, ObjectIndex from, ObjectIndex to);

struct Components {
    std::vector<std::vector<ObjectIndex>> parts;  ///< ordered by least member
    std::vector<std::size_t> part_of;             ///< object -> index into parts

    [[nodiscard]] bool connected() const { return parts.size() == 1; }
};

[[nodiscard]] Components connected_components(const LinearCategory& c);

}  // namespace covcat
