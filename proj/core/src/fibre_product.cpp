// SPDX-License-Identifier: Apache-2.0
#include "covcat/fibre_product.hpp"

#include <map>
#include <stdexcept>

#include "covcat/errors.hpp"

namespace covcat {

namespace {

/// Matrix of f on hom(a, b), widened to `rows` rows when the source hom is absent.
Matrix hom_matrix(const LinearFunctor& f, ObjectIndex a, ObjectIndex b) {
    const std::size_t rows = f.target().dim(f(a), f(b));
    const std::size_t cols = f.source().dim(a, b);
    if (cols == 0) {
        return Matrix(f.source().field(), rows, 0);
    }
    return f.matrix(a, b);
}

std::string combination_text(std::span<const std::string> names, const Vector& coords, std::size_t offset) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const Scalar& c = coords[offset + i];
        if (Field::is_zero(c)) {
            continue;
        }
        std::string term;
        if (c == 1) {
            term = names[i];
        } else if (c == -1) {
            term = "-" + names[i];
        } else {
            term = Field::format(c) + "*" + names[i];
        }
        if (!out.empty() && term.front() != '-') {
            out += "+";
        }
        out += term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace

FibreProduct fibre_product(const LinearFunctor& f, const LinearFunctor& g) {
    if (!same_category(f.target_ptr(), g.target_ptr())) {
        throw PreconditionError(PreconditionError::Reason::Mismatch, "fibre_product: functors have different targets");
    }
    if (!(f.source().field() == g.source().field())) {
        throw PreconditionError(PreconditionError::Reason::Mismatch, "fibre_product: fields differ");
    }
    const LinearCategory& c = f.source();
    const LinearCategory& d = g.source();
    const Field& field = c.field();

    std::vector<std::pair<ObjectIndex, ObjectIndex>> raw_pairs;
    std::vector<std::string> names;
    for (ObjectIndex x = 0; x < c.object_count(); ++x) {
        for (ObjectIndex y = 0; y < d.object_count(); ++y) {
            if (f(x) == g(y)) {
                raw_pairs.emplace_back(x, y);
                names.push_back(pair_name(c.object_name(x), d.object_name(y)));
            }
        }
    }
    if (names.empty()) {
        throw PreconditionError(PreconditionError::Reason::Mismatch, "fibre_product: the product has no objects");
    }
    CategoryBuilder builder(field, names);
    const std::size_t n = raw_pairs.size();
    std::vector<std::pair<ObjectIndex, ObjectIndex>> pairs(n);
    for (std::size_t k = 0; k < n; ++k) {
        pairs[builder.index_of(names[k])] = raw_pairs[k];
    }

    std::map<HomKey, EchelonBasis> kernels;
    for (ObjectIndex p = 0; p < n; ++p) {
        for (ObjectIndex q = 0; q < n; ++q) {
            const auto [x, y] = pairs[p];
            const auto [x2, y2] = pairs[q];
            const std::size_t dc = c.dim(x, x2);
            const std::size_t dd = d.dim(y, y2);
            if (dc + dd == 0) {
                continue;
            }
            const Matrix fm = hom_matrix(f, x, x2);
            const Matrix gm = hom_matrix(g, y, y2);
            const Matrix difference = hconcat(fm, Matrix(field, gm.rows(), gm.cols()) - gm);
            EchelonBasis kernel = EchelonBasis::span(field, dc + dd, kernel_basis(difference));
            if (kernel.dimension() == 0) {
                continue;
            }
            std::vector<std::string> basis;
            for (const auto& v : kernel.basis()) {
                basis.push_back("(" + combination_text(c.basis(x, x2), v, 0) + "," +
                                combination_text(d.basis(y, y2), v, dc) + ")");
            }
            builder.set_hom(p, q, std::move(basis));
            kernels.emplace(HomKey{p, q}, std::move(kernel));
        }
    }

    const auto split = [](const Vector& v, std::size_t dc) {
        return std::pair{Vector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dc)),
                         Vector(v.begin() + static_cast<std::ptrdiff_t>(dc), v.end())};
    };

    for (ObjectIndex p = 0; p < n; ++p) {
        const auto it = kernels.find(HomKey{p, p});
        if (it == kernels.end()) {
            continue;
        }
        const auto [x, y] = pairs[p];
        Vector id = c.identity(x);
        const Vector& idd = d.identity(y);
        id.insert(id.end(), idd.begin(), idd.end());
        const auto coords = it->second.coordinates(id);
        if (!coords) {
            throw std::logic_error("fibre_product: identity pair is not in the kernel");
        }
        builder.set_identity(p, *coords);
    }

    for (const auto& [k1, s1] : kernels) {
        for (const auto& [k2, s2] : kernels) {
            if (k2.src != k1.dst) {
                continue;
            }
            const auto [x, y] = pairs[k1.src];
            const auto [x1, y1] = pairs[k1.dst];
            const auto [x2, y2] = pairs[k2.dst];
            const std::size_t dc1 = c.dim(x, x1);
            const std::size_t dc2 = c.dim(x1, x2);
            const auto target = kernels.find(HomKey{k1.src, k2.dst});
            for (std::size_t i = 0; i < s1.dimension(); ++i) {
                const auto [f1, g1] = split(s1.basis()[i], dc1);
                for (std::size_t j = 0; j < s2.dimension(); ++j) {
                    const auto [f2, g2] = split(s2.basis()[j], dc2);
                    Vector product = c.compose(x, x1, x2, f2, f1);
                    const Vector dpart = d.compose(y, y1, y2, g2, g1);
                    product.insert(product.end(), dpart.begin(), dpart.end());
                    if (is_zero_vector(product)) {
                        continue;
                    }
                    if (target == kernels.end()) {
                        throw std::logic_error("fibre_product: composite left the kernel");
                    }
                    auto coords = target->second.coordinates(product);
                    if (!coords) {
                        throw std::logic_error("fibre_product: composite left the kernel");
                    }
                    builder.set_composition(k1.src, k1.dst, k2.dst, i, j, std::move(*coords));
                }
            }
        }
    }

    builder.make_basis_names_unique();
    auto category = std::make_shared<const LinearCategory>(std::move(builder).build());

    std::vector<ObjectIndex> to_c(n);
    std::vector<ObjectIndex> to_d(n);
    for (ObjectIndex p = 0; p < n; ++p) {
        to_c[p] = pairs[p].first;
        to_d[p] = pairs[p].second;
    }
    std::map<HomKey, Matrix> mc;
    std::map<HomKey, Matrix> md;
    for (const auto& [key, kernel] : kernels) {
        const auto [x, y] = pairs[key.src];
        const auto [x2, y2] = pairs[key.dst];
        const std::size_t dc = c.dim(x, x2);
        const std::size_t dd = d.dim(y, y2);
        std::vector<Vector> cols_c;
        std::vector<Vector> cols_d;
        for (const auto& v : kernel.basis()) {
            auto [vc, vd] = split(v, dc);
            cols_c.push_back(std::move(vc));
            cols_d.push_back(std::move(vd));
        }
        mc.emplace(key, Matrix::from_columns(field, dc, cols_c));
        md.emplace(key, Matrix::from_columns(field, dd, cols_d));
    }
    return FibreProduct{category, LinearFunctor(category, f.source_ptr(), std::move(to_c), std::move(mc)),
                        LinearFunctor(category, g.source_ptr(), std::move(to_d), std::move(md)), std::move(pairs)};
}

bool is_fully_faithful(const LinearFunctor& g) {
    const LinearCategory& src = g.source();
    const LinearCategory& dst = g.target();
    for (ObjectIndex x = 0; x < src.object_count(); ++x) {
        for (ObjectIndex y = 0; y < src.object_count(); ++y) {
            const std::size_t ds = src.dim(x, y);
            if (ds != dst.dim(g(x), g(y))) {
                return false;
            }
            if (ds > 0 && !rank_and_inverse(g.matrix(x, y)).inverse) {
                return false;
            }
        }
    }
    return true;
}

PullbackCovering fullyfaithful_pullback(const LinearFunctor& f, const LinearFunctor& g) {
    if (!is_fully_faithful(g)) {
        throw PreconditionError(PreconditionError::Reason::NotFullyFaithful,
                                "fullyfaithful_pullback: the second functor is not fully faithful");
    }
    if (!check_covering(f)) {
        throw PreconditionError(PreconditionError::Reason::NotCovering,
                                "fullyfaithful_pullback: the first functor is not a covering");
    }
    FibreProduct product = fibre_product(f, g);
    CoveringCheck check = check_covering(product.second_projection);
    if (!check.certificate) {
        throw std::logic_error("fullyfaithful_pullback: projection failed the covering test: " +
                               (check.failure ? check.failure->message : std::string{}));
    }
    return PullbackCovering{std::move(product), std::move(*check.certificate)};
}

}  // namespace covcat
