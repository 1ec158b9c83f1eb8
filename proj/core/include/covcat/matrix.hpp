// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "covcat/field.hpp"

namespace covcat {

/// Dense row-major matrix over a Field. Entries are kept reduced.
class Matrix {
public:
    Matrix(Field field, std::size_t rows, std::size_t cols);

    static Matrix identity(const Field& field, std::size_t n);
    /// Rows must all have the same length; `cols` is used when `rows` is empty.
    static Matrix from_rows(const Field& field, const std::vector<Vector>& rows, std::size_t cols = 0);
    static Matrix from_columns(const Field& field, std::size_t rows, const std::vector<Vector>& columns);

    [[nodiscard]] const Field& field() const { return field_; }
    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool is_square() const { return rows_ == cols_; }

    [[nodiscard]] const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, const Scalar& value);

    [[nodiscard]] Vector row(std::size_t r) const;
    [[nodiscard]] Vector column(std::size_t c) const;
    [[nodiscard]] Matrix transpose() const;
    [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    [[nodiscard]] bool is_zero() const;

    [[nodiscard]] Vector apply(const Vector& v) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> data_;
};

/// [a | b]; row counts must match.
[[nodiscard]] Matrix hconcat(const Matrix& a, const Matrix& b);
/// [a ; b]; column counts must match.
[[nodiscard]] Matrix vconcat(const Matrix& a, const Matrix& b);

struct RowEchelon {
    Matrix reduced;                   ///< reduced row-echelon form
    std::vector<std::size_t> pivots;  ///< pivot column of each non-zero row, increasing
};

[[nodiscard]] RowEchelon row_reduce(const Matrix& m);

/// A subspace of k^n held by its reduced echelon basis. The basis is unique
/// for the subspace, so two spans are equal iff their bases are identical.
class EchelonBasis {
public:
    EchelonBasis(Field field, std::size_t ambient);
    /// Canonical basis of the span of `vectors`.
    static EchelonBasis span(const Field& field, std::size_t ambient, const std::vector<Vector>& vectors);

    [[nodiscard]] std::size_t ambient() const { return ambient_; }
    [[nodiscard]] std::size_t dimension() const { return basis_.size(); }
    [[nodiscard]] const std::vector<Vector>& basis() const { return basis_; }
    [[nodiscard]] const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Coordinates of v in the basis, or nullopt when v is outside the span.
    [[nodiscard]] std::optional<Vector> coordinates(const Vector& v) const;
    /// v minus its components along the pivots; zero iff v lies in the span.
    [[nodiscard]] Vector reduce(const Vector& v) const;

private:
    Field field_;
    std::size_t ambient_;
    std::vector<Vector> basis_;
    std::vector<std::size_t> pivots_;
};

/// Basis of the null space of `m`, in reduced column-echelon form: vector i
/// has a 1 at pivot row r_i, zeros at every other pivot row, nothing above
/// r_i, and r_0 < r_1 < ...
[[nodiscard]] std::vector<Vector> kernel_basis(const Matrix& m);

struct RankInverse {
    std::size_t rank = 0;
    std::optional<Matrix> inverse;
};

[[nodiscard]] RankInverse rank_and_inverse(const Matrix& m);
[[nodiscard]] std::size_t rank(const Matrix& m);

}  // namespace covcat
