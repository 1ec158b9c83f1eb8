// SPDX-License-Identifier: Apache-2.0
#include "covcat/functor.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace covcat {

LinearFunctor::LinearFunctor(CategoryPtr source, CategoryPtr target, std::vector<ObjectIndex> object_map,
                             std::map<HomKey, Matrix> matrices)
    : source_(std::move(source)),
      target_(std::move(target)),
      object_map_(std::move(object_map)),
      empty_(source_ ? source_->field() : Field::rationals(), 0, 0) {
    if (!source_ || !target_) {
        throw std::invalid_argument("functor needs a source and a target category");
    }
    if (object_map_.size() != source_->object_count()) {
        throw std::invalid_argument("object map does not cover the source objects");
    }
    for (const auto& [key, m] : matrices) {
        if (source_->dim(key.src, key.dst) == 0 && !m.is_zero()) {
            throw std::invalid_argument("matrix given for absent hom (" + source_->object_name(key.src) + ", " +
                                        source_->object_name(key.dst) + ")");
        }
    }
    for (const auto& [key, basis] : source_->homs()) {
        auto it = matrices.find(key);
        const bool in_range = object_map_[key.src] < target_->object_count() &&
                              object_map_[key.dst] < target_->object_count();
        const std::size_t rows = in_range ? target_->dim(object_map_[key.src], object_map_[key.dst]) : 0;
        if (it == matrices.end()) {
            matrices_.emplace(key, Matrix(source_->field(), rows, basis.size()));
            continue;
        }
        Matrix m = std::move(it->second);
        if (rows == 0 && m.rows() != 0 && m.cols() == basis.size() && m.is_zero()) {
            m = Matrix(source_->field(), 0, basis.size());
        }
        matrices_.emplace(key, std::move(m));
    }
}

std::vector<ObjectIndex> LinearFunctor::fibre(ObjectIndex b) const {
    std::vector<ObjectIndex> out;
    for (ObjectIndex x = 0; x < object_map_.size(); ++x) {
        if (object_map_[x] == b) {
            out.push_back(x);
        }
    }
    return out;
}

const Matrix& LinearFunctor::matrix(ObjectIndex x, ObjectIndex y) const {
    const auto it = matrices_.find(HomKey{x, y});
    return it == matrices_.end() ? empty_ : it->second;
}

Vector LinearFunctor::apply(ObjectIndex x, ObjectIndex y, const Vector& f) const {
    const auto it = matrices_.find(HomKey{x, y});
    if (it == matrices_.end()) {
        return target_->zero(object_map_.at(x), object_map_.at(y));
    }
    return it->second.apply(f);
}

bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
    return a == b || (a && b && *a == *b);
}

LinearFunctor identity_functor(const CategoryPtr& c) {
    std::vector<ObjectIndex> objects(c->object_count());
    for (ObjectIndex x = 0; x < objects.size(); ++x) {
        objects[x] = x;
    }
    std::map<HomKey, Matrix> matrices;
    for (const auto& [key, basis] : c->homs()) {
        matrices.emplace(key, Matrix::identity(c->field(), basis.size()));
    }
    return LinearFunctor(c, c, std::move(objects), std::move(matrices));
}

ValidationReport validate_functor(const LinearFunctor& f) {
    ValidationReport report;
    const LinearCategory& src = f.source();
    const LinearCategory& dst = f.target();
    if (!(src.field() == dst.field())) {
        report.violations.push_back({Violation::Kind::Structure, "source and target fields differ", {}});
        return report;
    }
    for (ObjectIndex x = 0; x < src.object_count(); ++x) {
        if (f(x) >= dst.object_count()) {
            report.violations.push_back(
                {Violation::Kind::ObjectMap, "object " + src.object_name(x) + " maps outside the target", {}});
        }
    }
    if (!report.ok()) {
        return report;
    }

    bool shapes_ok = true;
    for (const auto& [key, m] : f.matrices()) {
        const std::size_t rows = dst.dim(f(key.src), f(key.dst));
        const std::size_t cols = src.dim(key.src, key.dst);
        if (m.rows() == rows && m.cols() == cols) {
            continue;
        }
        shapes_ok = false;
        const std::string where = "(" + src.object_name(key.src) + ", " + src.object_name(key.dst) + ")";
        if (rows == 0) {
            report.violations.push_back({Violation::Kind::ZeroHom,
                                         "non-zero morphisms of hom" + where + " map into a zero hom space",
                                         {}});
        } else {
            report.violations.push_back({Violation::Kind::Dimension,
                                         "matrix on hom" + where + " is " + std::to_string(m.rows()) + "x" +
                                             std::to_string(m.cols()) + ", expected " + std::to_string(rows) +
                                             "x" + std::to_string(cols),
                                         {}});
        }
    }
    if (!shapes_ok) {
        return report;
    }

    for (ObjectIndex x = 0; x < src.object_count(); ++x) {
        if (f.apply(x, x, src.identity(x)) != dst.identity(f(x))) {
            report.violations.push_back({Violation::Kind::Identity,
                                         "F(1_" + src.object_name(x) + ") != 1_" + dst.object_name(f(x)),
                                         {}});
        }
    }

    for (const auto& [kf, bf] : src.homs()) {
        const auto [x, y] = kf;
        for (const auto& [kg, bg] : src.homs()) {
            if (kg.src != y) {
                continue;
            }
            const ObjectIndex z = kg.dst;
            for (std::size_t i = 0; i < bf.size(); ++i) {
                const Vector fv = src.basis_vector(x, y, i);
                const Vector ff = f.apply(x, y, fv);
                for (std::size_t j = 0; j < bg.size(); ++j) {
                    const Vector gv = src.basis_vector(y, z, j);
                    const Vector lhs = f.apply(x, z, src.compose(x, y, z, gv, fv));
                    const Vector rhs = dst.compose(f(x), f(y), f(z), f.apply(y, z, gv), ff);
                    if (lhs != rhs) {
                        report.violations.push_back({Violation::Kind::Composition,
                                                     "F(" + bg[j] + " ∘ " + bf[i] + ") != F(" + bg[j] + ") ∘ F(" +
                                                         bf[i] + ")",
                                                     {bf[i], bg[j]}});
                    }
                }
            }
        }
    }
    return report;
}

LinearFunctor compose(const LinearFunctor& g, const LinearFunctor& f) {
    if (!same_category(f.target_ptr(), g.source_ptr())) {
        throw std::invalid_argument("compose: target of the first functor is not the source of the second");
    }
    std::vector<ObjectIndex> objects(f.source().object_count());
    for (ObjectIndex x = 0; x < objects.size(); ++x) {
        objects[x] = g(f(x));
    }
    std::map<HomKey, Matrix> matrices;
    for (const auto& [key, m] : f.matrices()) {
        const ObjectIndex fx = f(key.src);
        const ObjectIndex fy = f(key.dst);
        if (m.rows() == 0) {
            const std::size_t rows = g.target().dim(objects[key.src], objects[key.dst]);
            matrices.emplace(key, Matrix(f.source().field(), rows, m.cols()));
        } else {
            matrices.emplace(key, g.matrix(fx, fy) * m);
        }
    }
    return LinearFunctor(f.source_ptr(), g.target_ptr(), std::move(objects), std::move(matrices));
}

bool functor_equal(const LinearFunctor& f, const LinearFunctor& g) {
    return same_category(f.source_ptr(), g.source_ptr()) && same_category(f.target_ptr(), g.target_ptr()) &&
           f.object_map() == g.object_map() && f.matrices() == g.matrices();
}

std::optional<LinearFunctor> is_isomorphism(const LinearFunctor& f) {
    const LinearCategory& src = f.source();
    const LinearCategory& dst = f.target();
    const std::size_t n = src.object_count();
    if (n != dst.object_count()) {
        return std::nullopt;
    }
    std::vector<ObjectIndex> inverse_objects(n, n);
    for (ObjectIndex x = 0; x < n; ++x) {
        if (f(x) >= n || inverse_objects[f(x)] != n) {
            return std::nullopt;
        }
        inverse_objects[f(x)] = x;
    }
    std::map<HomKey, Matrix> inverse_matrices;
    for (ObjectIndex x = 0; x < n; ++x) {
        for (ObjectIndex y = 0; y < n; ++y) {
            const std::size_t ds = src.dim(x, y);
            const std::size_t dt = dst.dim(f(x), f(y));
            if (ds != dt) {
                return std::nullopt;
            }
            if (ds == 0) {
                continue;
            }
            auto inv = rank_and_inverse(f.matrix(x, y));
            if (!inv.inverse) {
                return std::nullopt;
            }
            inverse_matrices.emplace(HomKey{f(x), f(y)}, std::move(*inv.inverse));
        }
    }
    return LinearFunctor(f.target_ptr(), f.source_ptr(), std::move(inverse_objects), std::move(inverse_matrices));
}

CategoryWithFunctor full_subcategory(const CategoryPtr& c, std::span<const ObjectIndex> objects) {
    std::set<ObjectIndex> chosen(objects.begin(), objects.end());
    if (chosen.empty()) {
        throw std::invalid_argument("full_subcategory: no objects selected");
    }
    std::vector<std::string> names;
    for (ObjectIndex x : chosen) {
        names.push_back(c->object_name(x));
    }
    CategoryBuilder builder(c->field(), names);
    // Sorted names keep the relative order of `chosen`.
    std::vector<ObjectIndex> parent(chosen.begin(), chosen.end());
    const std::size_t n = parent.size();
    for (ObjectIndex a = 0; a < n; ++a) {
        for (ObjectIndex b = 0; b < n; ++b) {
            const auto basis = c->basis(parent[a], parent[b]);
            builder.set_hom(a, b, {basis.begin(), basis.end()});
        }
        builder.set_identity(a, c->identity(parent[a]));
    }
    for (ObjectIndex a = 0; a < n; ++a) {
        for (ObjectIndex b = 0; b < n; ++b) {
            for (ObjectIndex d = 0; d < n; ++d) {
                for (std::size_t i = 0; i < c->dim(parent[a], parent[b]); ++i) {
                    for (std::size_t j = 0; j < c->dim(parent[b], parent[d]); ++j) {
                        if (const Vector* v = c->structure_constant(parent[a], parent[b], parent[d], i, j)) {
                            builder.set_composition(a, b, d, i, j, *v);
                        }
                    }
                }
            }
        }
    }
    auto sub = std::make_shared<const LinearCategory>(std::move(builder).build());
    std::map<HomKey, Matrix> matrices;
    for (const auto& [key, basis] : sub->homs()) {
        matrices.emplace(key, Matrix::identity(c->field(), basis.size()));
    }
    return {sub, LinearFunctor(sub, c, parent, std::move(matrices))};
}

std::string pair_name(std::string_view x, std::string_view y) {
    return "(" + std::string(x) + "," + std::string(y) + ")";
}

CategoryWithFunctor product_with_set(const CategoryPtr& b, const std::vector<std::string>& labels) {
    if (labels.empty()) {
        throw std::invalid_argument("product_with_set: the label set is empty");
    }
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() != labels.size()) {
        throw std::invalid_argument("product_with_set: repeated label");
    }
    std::vector<std::string> names;
    for (const auto& x : b->objects()) {
        for (const auto& e : labels) {
            names.push_back(pair_name(x, e));
        }
    }
    CategoryBuilder builder(b->field(), names);
    const auto idx = [&](ObjectIndex x, const std::string& e) {
        return builder.index_of(pair_name(b->object_name(x), e));
    };
    for (const auto& e : labels) {
        for (const auto& [key, basis] : b->homs()) {
            std::vector<std::string> renamed;
            for (const auto& name : basis) {
                renamed.push_back(name + "@" + e);
            }
            builder.set_hom(idx(key.src, e), idx(key.dst, e), std::move(renamed));
        }
        for (ObjectIndex x = 0; x < b->object_count(); ++x) {
            builder.set_identity(idx(x, e), b->identity(x));
        }
    }
    for (const auto& e : labels) {
        for (const auto& [kf, bf] : b->homs()) {
            for (const auto& [kg, bg] : b->homs()) {
                if (kg.src != kf.dst) {
                    continue;
                }
                for (std::size_t i = 0; i < bf.size(); ++i) {
                    for (std::size_t j = 0; j < bg.size(); ++j) {
                        if (const Vector* v = b->structure_constant(kf.src, kf.dst, kg.dst, i, j)) {
                            builder.set_composition(idx(kf.src, e), idx(kf.dst, e), idx(kg.dst, e), i, j, *v);
                        }
                    }
                }
            }
        }
    }
    builder.make_basis_names_unique();
    auto product = std::make_shared<const LinearCategory>(std::move(builder).build());

    std::vector<ObjectIndex> object_map(product->object_count());
    std::map<HomKey, Matrix> matrices;
    for (ObjectIndex x = 0; x < b->object_count(); ++x) {
        for (const auto& e : labels) {
            object_map[product->index_of(pair_name(b->object_name(x), e))] = x;
        }
    }
    for (const auto& [key, basis] : product->homs()) {
        matrices.emplace(key, Matrix::identity(b->field(), basis.size()));
    }
    return {product, LinearFunctor(product, b, std::move(object_map), std::move(matrices))};
}

}  // namespace covcat
