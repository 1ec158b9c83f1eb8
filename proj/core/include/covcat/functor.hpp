// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covcat/category.hpp"
#include "covcat/matrix.hpp"

namespace covcat {

/// A k-linear functor: an object map plus, for every non-zero source hom
/// (x, y), a matrix from the basis of hom(x, y) to the basis of
/// hom(Fx, Fy).
///
/// The constructor fills in zero matrices for source homs the caller left
/// out and collapses an all-zero matrix into an absent target hom to the
/// canonical 0-row shape. Any other shape mismatch is kept so that
/// validate_functor can report it.
class LinearFunctor {
public:
    LinearFunctor(CategoryPtr source, CategoryPtr target, std::vector<ObjectIndex> object_map,
                  std::map<HomKey, Matrix> matrices = {});

    [[nodiscard]] const LinearCategory& source() const { return *source_; }
    [[nodiscard]] const LinearCategory& target() const { return *target_; }
    [[nodiscard]] const CategoryPtr& source_ptr() const { return source_; }
    [[nodiscard]] const CategoryPtr& target_ptr() const { return target_; }

    [[nodiscard]] const std::vector<ObjectIndex>& object_map() const { return object_map_; }
    [[nodiscard]] ObjectIndex operator()(ObjectIndex x) const { return object_map_.at(x); }
    [[nodiscard]] std::vector<ObjectIndex> fibre(ObjectIndex b) const;

    /// Matrix on hom(x, y); a 0×0 matrix when the source hom is absent.
    [[nodiscard]] const Matrix& matrix(ObjectIndex x, ObjectIndex y) const;
    [[nodiscard]] const std::map<HomKey, Matrix>& matrices() const { return matrices_; }

    /// Image of f ∈ hom(x, y) in hom(Fx, Fy).
    [[nodiscard]] Vector apply(ObjectIndex x, ObjectIndex y, const Vector& f) const;

private:
    CategoryPtr source_;
    CategoryPtr target_;
    std::vector<ObjectIndex> object_map_;
    std::map<HomKey, Matrix> matrices_;
    Matrix empty_;
};

/// Pointer identity or value equality.
[[nodiscard]] bool same_category(const CategoryPtr& a, const CategoryPtr& b);

[[nodiscard]] LinearFunctor identity_functor(const CategoryPtr& c);

/// Checks F(1_x) = 1_Fx and F(g∘f) = F(g)∘F(f) on all composable basis pairs,
/// plus matrix shapes.
[[nodiscard]] ValidationReport validate_functor(const LinearFunctor& f);

/// g∘f. Throws std::invalid_argument when f's target is not g's source.
[[nodiscard]] LinearFunctor compose(const LinearFunctor& g, const LinearFunctor& f);

[[nodiscard]] bool functor_equal(const LinearFunctor& f, const LinearFunctor& g);

/// The inverse functor when f is bijective on objects and invertible on
/// every hom space (absent homs must pair with absent homs).
[[nodiscard]] std::optional<LinearFunctor> is_isomorphism(const LinearFunctor& f);

struct CategoryWithFunctor {
    CategoryPtr category;
    LinearFunctor functor;
};

/// The full subcategory on `objects` and its inclusion into `c`.
[[nodiscard]] CategoryWithFunctor full_subcategory(const CategoryPtr& c, std::span<const ObjectIndex> objects);

/// B × E: objects "(b,e)", hom((x,e),(y,e)) = hom(x,y) and zero across
/// labels, together with the projection onto B. Throws on empty `labels`.
[[nodiscard]] CategoryWithFunctor product_with_set(const CategoryPtr& b, const std::vector<std::string>& labels);

/// Name for the pair object (x, y).
[[nodiscard]] std::string pair_name(std::string_view x, std::string_view y);

}  // namespace covcat
