// SPDX-License-Identifier: Apache-2.0
#include "covcat/matrix.hpp"

#include <stdexcept>
#include <string>

namespace covcat {

namespace {

void require_same_field(const Matrix& a, const Matrix& b, const char* op) {
    if (!(a.field() == b.field())) {
        throw std::invalid_argument(std::string(op) + ": matrices over different fields");
    }
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

Matrix Matrix::identity(const Field& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.data_[i * n + i] = 1;
    }
    return m;
}

Matrix Matrix::from_rows(const Field& field, const std::vector<Vector>& rows, std::size_t cols) {
    const std::size_t n = rows.empty() ? cols : rows.front().size();
    Matrix m(field, rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != n) {
            throw std::invalid_argument("from_rows: ragged rows");
        }
        for (std::size_t c = 0; c < n; ++c) {
            m.data_[r * n + c] = field.normalize(rows[r][c]);
        }
    }
    return m;
}

Matrix Matrix::from_columns(const Field& field, std::size_t rows, const std::vector<Vector>& columns) {
    Matrix m(field, rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) {
            throw std::invalid_argument("from_columns: column length mismatch");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            m.data_[r * m.cols_ + c] = field.normalize(columns[c][r]);
        }
    }
    return m;
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& value) {
    if (r >= rows_ || c >= cols_) {
        throw std::out_of_range("Matrix::set: index out of range");
    }
    data_[r * cols_ + c] = field_.normalize(value);
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        v[r] = at(r, c);
    }
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t.data_[c * rows_ + r] = at(r, c);
        }
    }
    return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw std::out_of_range("Matrix::block: out of range");
    }
    Matrix b(field_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
        for (std::size_t c = 0; c < nc; ++c) {
            b.data_[r * nc + c] = at(r0 + r, c0 + c);
        }
    }
    return b;
}

bool Matrix::is_zero() const {
    return is_zero_vector(data_);
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("Matrix::apply: dimension mismatch");
    }
    Vector out(rows_, Scalar(0));
    for (std::size_t r = 0; r < rows_; ++r) {
        Scalar acc(0);
        for (std::size_t c = 0; c < cols_; ++c) {
            if (!Field::is_zero(v[c])) {
                acc += at(r, c) * v[c];
            }
        }
        out[r] = field_.normalize(acc);
    }
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "multiply");
    if (a.cols_ != b.rows_) {
        throw std::invalid_argument("multiply: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                                    " by " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    }
    Matrix m(a.field_, a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a.at(r, k);
            if (Field::is_zero(x)) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols_; ++c) {
                m.data_[r * b.cols_ + c] += x * b.at(k, c);
            }
        }
    }
    for (auto& x : m.data_) {
        x = m.field_.normalize(x);
    }
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "add");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw std::invalid_argument("add: shape mismatch");
    }
    Matrix m(a.field_, a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
        m.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
    }
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "subtract");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw std::invalid_argument("subtract: shape mismatch");
    }
    Matrix m(a.field_, a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
        m.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
    }
    return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("hconcat: row mismatch");
    }
    Matrix m(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            m.set(r, c, a.at(r, c));
        }
        for (std::size_t c = 0; c < b.cols(); ++c) {
            m.set(r, a.cols() + c, b.at(r, c));
        }
    }
    return m;
}

Matrix vconcat(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        throw std::invalid_argument("vconcat: column mismatch");
    }
    Matrix m(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        for (std::size_t r = 0; r < a.rows(); ++r) {
            m.set(r, c, a.at(r, c));
        }
        for (std::size_t r = 0; r < b.rows(); ++r) {
            m.set(a.rows() + r, c, b.at(r, c));
        }
    }
    return m;
}

RowEchelon row_reduce(const Matrix& m) {
    const Field& field = m.field();
    std::vector<Vector> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        rows.push_back(m.row(r));
    }
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols() && lead < rows.size(); ++col) {
        std::size_t found = lead;
        while (found < rows.size() && Field::is_zero(rows[found][col])) {
            ++found;
        }
        if (found == rows.size()) {
            continue;
        }
        std::swap(rows[lead], rows[found]);
        const Scalar scale = field.inv(rows[lead][col]);
        for (auto& x : rows[lead]) {
            x = field.mul(x, scale);
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead || Field::is_zero(rows[r][col])) {
                continue;
            }
            const Scalar factor = rows[r][col];
            for (std::size_t c = col; c < m.cols(); ++c) {
                rows[r][c] = field.sub(rows[r][c], field.mul(factor, rows[lead][c]));
            }
        }
        pivots.push_back(col);
        ++lead;
    }
    return RowEchelon{Matrix::from_rows(field, rows, m.cols()), std::move(pivots)};
}

EchelonBasis::EchelonBasis(Field field, std::size_t ambient) : field_(field), ambient_(ambient) {}

EchelonBasis EchelonBasis::span(const Field& field, std::size_t ambient, const std::vector<Vector>& vectors) {
    EchelonBasis out(field, ambient);
    if (vectors.empty()) {
        return out;
    }
    const RowEchelon ech = row_reduce(Matrix::from_rows(field, vectors, ambient));
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
        out.basis_.push_back(ech.reduced.row(i));
    }
    out.pivots_ = ech.pivots;
    return out;
}

Vector EchelonBasis::reduce(const Vector& v) const {
    if (v.size() != ambient_) {
        throw std::invalid_argument("EchelonBasis::reduce: dimension mismatch");
    }
    Vector r = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Scalar coeff = r[pivots_[i]];
        if (!Field::is_zero(coeff)) {
            r = axpy(field_, r, field_.neg(coeff), basis_[i]);
        }
    }
    return r;
}

std::optional<Vector> EchelonBasis::coordinates(const Vector& v) const {
    if (!is_zero_vector(reduce(v))) {
        return std::nullopt;
    }
    Vector coords(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        coords[i] = v[pivots_[i]];
    }
    return coords;
}

std::vector<Vector> kernel_basis(const Matrix& m) {
    const Field& field = m.field();
    const RowEchelon ech = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ech.pivots) {
        is_pivot[p] = true;
    }
    std::vector<Vector> raw;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        Vector v = zero_vector(field, m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
            v[ech.pivots[i]] = field.neg(ech.reduced.at(i, free));
        }
        raw.push_back(std::move(v));
    }
    // Column-echelon form of the kernel is the row-echelon form of its transpose.
    return EchelonBasis::span(field, m.cols(), raw).basis();
}

RankInverse rank_and_inverse(const Matrix& m) {
    const Field& field = m.field();
    if (!m.is_square()) {
        return RankInverse{row_reduce(m).pivots.size(), std::nullopt};
    }
    const std::size_t n = m.rows();
    const RowEchelon ech = row_reduce(hconcat(m, Matrix::identity(field, n)));
    std::size_t rank = 0;
    for (auto p : ech.pivots) {
        if (p < n) {
            ++rank;
        }
    }
    if (rank < n) {
        return RankInverse{rank, std::nullopt};
    }
    return RankInverse{n, ech.reduced.block(0, n, n, n)};
}

std::size_t rank(const Matrix& m) {
    return row_reduce(m).pivots.size();
}

}  // namespace covcat
