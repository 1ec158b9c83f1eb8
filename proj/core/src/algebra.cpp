// SPDX-License-Identifier: Apache-2.0
#include "covcat/algebra.hpp"

#include <stdexcept>

namespace covcat {

Vector AlgebraData::multiply(const Vector& a, const Vector& b) const {
    const std::size_t n = basis.size();
    if (a.size() != n || b.size() != n) {
        throw std::invalid_argument("algebra element has the wrong dimension");
    }
    Vector out = zero_vector(field, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (Field::is_zero(a[i])) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (Field::is_zero(b[j])) {
                continue;
            }
            out = axpy(field, out, field.mul(a[i], b[j]), products.at(i).at(j));
        }
    }
    return out;
}

LinearCategory category_from_algebra(const AlgebraData& algebra, const std::vector<NamedIdempotent>& idempotents) {
    const Field& field = algebra.field;
    const std::size_t n = algebra.basis.size();
    if (algebra.products.size() != n) {
        throw std::invalid_argument("structure constant table has the wrong size");
    }
    for (const auto& row : algebra.products) {
        if (row.size() != n) {
            throw std::invalid_argument("structure constant table has the wrong size");
        }
        for (const auto& v : row) {
            if (v.size() != n) {
                throw std::invalid_argument("structure constant has the wrong dimension");
            }
        }
    }
    if (idempotents.empty()) {
        throw std::invalid_argument("no idempotents given");
    }

    Vector sum = zero_vector(field, n);
    for (const auto& e : idempotents) {
        if (algebra.multiply(e.element, e.element) != e.element) {
            throw std::invalid_argument("\"" + e.name + "\" is not idempotent");
        }
        sum = axpy(field, sum, field.one(), e.element);
    }
    for (const auto& e : idempotents) {
        for (const auto& f : idempotents) {
            if (&e != &f && !is_zero_vector(algebra.multiply(e.element, f.element))) {
                throw std::invalid_argument("\"" + e.name + "\" and \"" + f.name + "\" are not orthogonal");
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        Vector b = zero_vector(field, n);
        b[i] = 1;
        if (algebra.multiply(sum, b) != b || algebra.multiply(b, sum) != b) {
            throw std::invalid_argument("the idempotents do not sum to 1");
        }
    }

    std::vector<std::string> names;
    for (const auto& e : idempotents) {
        names.push_back(e.name);
    }
    CategoryBuilder builder(field, names);
    const std::size_t m = idempotents.size();
    std::vector<const NamedIdempotent*> by_index(m);
    for (const auto& e : idempotents) {
        by_index[builder.index_of(e.name)] = &e;
    }

    // hom(e, f) = fAe.
    std::map<HomKey, EchelonBasis> spaces;
    for (ObjectIndex x = 0; x < m; ++x) {
        for (ObjectIndex y = 0; y < m; ++y) {
            std::vector<Vector> span;
            for (std::size_t i = 0; i < n; ++i) {
                Vector b = zero_vector(field, n);
                b[i] = 1;
                span.push_back(algebra.multiply(algebra.multiply(by_index[y]->element, b), by_index[x]->element));
            }
            EchelonBasis space = EchelonBasis::span(field, n, span);
            std::vector<std::string> basis;
            for (std::size_t k = 0; k < space.dimension(); ++k) {
                basis.push_back(by_index[y]->name + "A" + by_index[x]->name + "_" + std::to_string(k + 1));
            }
            builder.set_hom(x, y, std::move(basis));
            spaces.emplace(HomKey{x, y}, std::move(space));
        }
    }
    for (ObjectIndex x = 0; x < m; ++x) {
        const auto& space = spaces.at(HomKey{x, x});
        if (space.dimension() > 0) {
            builder.set_identity(x, *space.coordinates(by_index[x]->element));
        }
    }
    for (ObjectIndex x = 0; x < m; ++x) {
        for (ObjectIndex y = 0; y < m; ++y) {
            const auto& fs = spaces.at(HomKey{x, y});
            for (ObjectIndex z = 0; z < m; ++z) {
                const auto& gs = spaces.at(HomKey{y, z});
                const auto& target = spaces.at(HomKey{x, z});
                for (std::size_t i = 0; i < fs.dimension(); ++i) {
                    for (std::size_t j = 0; j < gs.dimension(); ++j) {
                        const Vector product = algebra.multiply(gs.basis()[j], fs.basis()[i]);
                        auto coords = target.coordinates(product);
                        if (!coords) {
                            throw std::logic_error("product left the expected Peirce component");
                        }
                        if (!is_zero_vector(*coords)) {
                            builder.set_composition(x, y, z, i, j, std::move(*coords));
                        }
                    }
                }
            }
        }
    }
    return std::move(builder).build();
}

AlgebraData matrix_algebra(const Field& field, std::size_t n) {
    AlgebraData a;
    a.field = field;
    const auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a.basis.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    }
    const std::size_t d = n * n;
    a.products.assign(d, std::vector<Vector>(d, zero_vector(field, d)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                // E_ij E_jk = E_ik
                a.products[idx(i, j)][idx(j, k)][idx(i, k)] = 1;
            }
        }
    }
    return a;
}

}  // namespace covcat
