// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "covcat/category.hpp"

namespace covcat {

/// A finite-dimensional algebra given by structure constants on a basis:
/// products[i][j] holds the coordinates of basis[i] · basis[j].
struct AlgebraData {
    Field field = Field::rationals();
    std::vector<std::string> basis;
    std::vector<std::vector<Vector>> products;

    [[nodiscard]] Vector multiply(const Vector& a, const Vector& b) const;
};

struct NamedIdempotent {
    std::string name;
    Vector element;
};

/// The category B_{A,E}: objects are the idempotents, hom(e, f) = fAe with
/// its reduced echelon basis, composition is multiplication in A.
///
/// Throws std::invalid_argument unless E is a complete set of orthogonal
/// idempotents (e² = e, ef = 0 for e ≠ f, Σe acts as the unit).
[[nodiscard]] LinearCategory category_from_algebra(const AlgebraData& algebra,
                                                   const std::vector<NamedIdempotent>& idempotents);

/// The full matrix algebra M_n(k) on the basis E_ij (named "E<i><j>", 1-based).
[[nodiscard]] AlgebraData matrix_algebra(const Field& field, std::size_t n);

}  // namespace covcat
