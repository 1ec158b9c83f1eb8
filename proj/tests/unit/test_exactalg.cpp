// SPDX-License-Identifier: Apache-2.0
#include <random>

#include <gtest/gtest.h>

#include "covcat/matrix.hpp"
#include "oracles.hpp"

using namespace covcat;

namespace {

Matrix mat(const Field& k, std::vector<std::vector<long>> rows) {
    std::vector<Vector> v;
    for (const auto& r : rows) {
        Vector row;
        for (long x : r) {
            row.push_back(k.from_int(x));
        }
        v.push_back(row);
    }
    return Matrix::from_rows(k, v, rows.empty() ? 0 : rows.front().size());
}

oracle::Rows rows_of(const Matrix& m) {
    oracle::Rows out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out.push_back(m.row(r));
    }
    return out;
}

Matrix random_matrix(std::mt19937& rng, const Field& k, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<int> entry(-3, 3);
    std::bernoulli_distribution sparse(0.4);
    Matrix m(k, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m.set(r, c, sparse(rng) ? Scalar(0) : Scalar(entry(rng)));
        }
    }
    return m;
}

std::vector<Field> fields() {
    return {Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(7)};
}

}  // namespace

TEST(Field, RejectsNonPrimeCharacteristic) {
    EXPECT_THROW((void)Field::prime(4), std::invalid_argument);
    EXPECT_THROW((void)Field::prime(1), std::invalid_argument);
    EXPECT_NO_THROW((void)Field::prime(101));
}

TEST(Field, PrimeFieldArithmeticWrapsAround) {
    const Field f = Field::prime(5);
    EXPECT_EQ(f.add(f.from_int(3), f.from_int(4)), Scalar(2));
    EXPECT_EQ(f.neg(f.from_int(1)), Scalar(4));
    EXPECT_EQ(f.inv(f.from_int(2)), Scalar(3));
    EXPECT_EQ(f.parse("1/2"), Scalar(3));
    EXPECT_EQ(f.from_int(-7), Scalar(3));
}

TEST(Field, RationalArithmeticIsExact) {
    const Field q = Field::rationals();
    EXPECT_EQ(q.add(q.parse("1/3"), q.parse("1/6")), q.parse("1/2"));
    EXPECT_EQ(Field::format(q.parse("-6/4")), "-3/2");
    EXPECT_THROW((void)q.inv(Scalar(0)), std::domain_error);
    EXPECT_THROW((void)q.parse("x"), std::invalid_argument);
}

TEST(Field, ParseRejectsDenominatorDivisibleByP) {
    EXPECT_THROW((void)Field::prime(3).parse("1/3"), std::exception);
}

TEST(KernelBasis, InvertibleMapHasZeroKernel) {
    const Field q = Field::rationals();
    EXPECT_TRUE(kernel_basis(Matrix::identity(q, 3)).empty());
}

TEST(KernelBasis, AllOnesRowOverF2) {
    const Field f2 = Field::prime(2);
    const auto k = kernel_basis(mat(f2, {{1, 1}}));
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0], (Vector{1, 1}));
}

TEST(KernelBasis, RankOneTwoByThreeMatchesOracle) {
    const Field q = Field::rationals();
    const Matrix m = mat(q, {{1, 2, 3}, {2, 4, 6}});
    const oracle::Arith a{0};
    const std::size_t expected = oracle::nullity(rows_of(m), 3, a);
    ASSERT_EQ(expected, 2u);
    const auto k = kernel_basis(m);
    ASSERT_EQ(k.size(), expected);
    for (const auto& v : k) {
        EXPECT_TRUE(is_zero_vector(m.apply(v)));
    }
    // Canonical form: pivots at rows 0 and 1.
    EXPECT_EQ(k[0], (Vector{1, 0, q.parse("-1/3")}));
    EXPECT_EQ(k[1], (Vector{0, 1, q.parse("-2/3")}));
}

TEST(KernelBasis, ZeroColumnsAndZeroRows) {
    const Field q = Field::rationals();
    EXPECT_TRUE(kernel_basis(Matrix(q, 2, 0)).empty());
    const auto k = kernel_basis(Matrix(q, 0, 2));
    ASSERT_EQ(k.size(), 2u);
    EXPECT_EQ(k[0], (Vector{1, 0}));
    EXPECT_EQ(k[1], (Vector{0, 1}));
}

TEST(RankInverse, IdentityIsSelfInverse) {
    for (const Field& k : fields()) {
        const auto r = rank_and_inverse(Matrix::identity(k, 4));
        EXPECT_EQ(r.rank, 4u);
        ASSERT_TRUE(r.inverse);
        EXPECT_EQ(*r.inverse, Matrix::identity(k, 4));
    }
}

TEST(RankInverse, ZeroMatrixHasNoInverse) {
    const auto r = rank_and_inverse(Matrix(Field::rationals(), 2, 2));
    EXPECT_EQ(r.rank, 0u);
    EXPECT_FALSE(r.inverse);
}

TEST(RankInverse, UpperTriangularOverF2IsInvolution) {
    const Field f2 = Field::prime(2);
    const Matrix m = mat(f2, {{1, 1}, {0, 1}});
    const auto r = rank_and_inverse(m);
    EXPECT_EQ(r.rank, 2u);
    ASSERT_TRUE(r.inverse);
    EXPECT_EQ(*r.inverse, m);
    EXPECT_TRUE(oracle::is_identity(rows_of(m * *r.inverse), 2, oracle::Arith{2}));
}

TEST(RankInverse, NonSquareHasRankButNoInverse) {
    const auto r = rank_and_inverse(mat(Field::rationals(), {{1, 0, 0}, {0, 1, 0}}));
    EXPECT_EQ(r.rank, 2u);
    EXPECT_FALSE(r.inverse);
}

TEST(RankInverse, SingularOverF3ButInvertibleOverQ) {
    const std::vector<std::vector<long>> m{{1, 1}, {1, 4}};
    EXPECT_TRUE(rank_and_inverse(mat(Field::rationals(), m)).inverse);
    EXPECT_FALSE(rank_and_inverse(mat(Field::prime(3), m)).inverse);
}

TEST(EchelonBasis, CoordinatesRecoverCombination) {
    const Field q = Field::rationals();
    const auto span = EchelonBasis::span(q, 3, {{1, 2, 0}, {0, 1, 1}});
    ASSERT_EQ(span.dimension(), 2u);
    const Vector v{2, 5, 1};  // 2·(1,2,0) + 1·(0,1,1)
    const auto c = span.coordinates(v);
    ASSERT_TRUE(c);
    Vector back(3, 0);
    for (std::size_t i = 0; i < c->size(); ++i) {
        back = axpy(q, back, (*c)[i], span.basis()[i]);
    }
    EXPECT_EQ(back, v);
    EXPECT_FALSE(span.coordinates(Vector{0, 0, 1}));
}

// Properties over random small matrices.

TEST(ExactAlgProperties, RankPlusNullityEqualsColumns) {
    std::mt19937 rng(20261015);
    for (const Field& k : fields()) {
        for (int trial = 0; trial < 150; ++trial) {
            const std::size_t rows = rng() % 5;
            const std::size_t cols = rng() % 6;
            const Matrix m = random_matrix(rng, k, rows, cols);
            const auto kernel = kernel_basis(m);
            EXPECT_EQ(rank(m) + kernel.size(), cols);
            const oracle::Arith a = oracle::Arith::of(k);
            EXPECT_EQ(rank(m), oracle::rank(rows_of(m), a));
            for (const auto& v : kernel) {
                EXPECT_TRUE(is_zero_vector(m.apply(v)));
            }
        }
    }
}

TEST(ExactAlgProperties, KernelBasisIsCanonical) {
    std::mt19937 rng(7);
    for (const Field& k : fields()) {
        for (int trial = 0; trial < 100; ++trial) {
            const Matrix m = random_matrix(rng, k, 1 + rng() % 4, 1 + rng() % 5);
            const auto first = kernel_basis(m);
            EXPECT_EQ(first, kernel_basis(m));
            // Row operations do not change the kernel, so the basis must not move.
            Matrix shuffled = m;
            if (m.rows() >= 2) {
                for (std::size_t c = 0; c < m.cols(); ++c) {
                    shuffled.set(0, c, k.add(m.at(0, c), k.mul(k.from_int(2), m.at(1, c))));
                }
            }
            EXPECT_EQ(first, kernel_basis(shuffled));
            // Pivot rows increase and carry a 1.
            std::size_t last = 0;
            for (std::size_t i = 0; i < first.size(); ++i) {
                std::size_t lead = 0;
                while (Field::is_zero(first[i][lead])) {
                    ++lead;
                }
                EXPECT_EQ(first[i][lead], Scalar(1));
                if (i > 0) {
                    EXPECT_GT(lead, last);
                }
                for (std::size_t j = 0; j < first.size(); ++j) {
                    if (j != i) {
                        EXPECT_TRUE(Field::is_zero(first[j][lead]));
                    }
                }
                last = lead;
            }
        }
    }
}

TEST(ExactAlgProperties, InverseIsExact) {
    std::mt19937 rng(99);
    for (const Field& k : fields()) {
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 1 + rng() % 4;
            const Matrix m = random_matrix(rng, k, n, n);
            const auto r = rank_and_inverse(m);
            EXPECT_EQ(r.inverse.has_value(), r.rank == n);
            if (r.inverse) {
                EXPECT_EQ(m * *r.inverse, Matrix::identity(k, n));
                EXPECT_EQ(*r.inverse * m, Matrix::identity(k, n));
            }
        }
    }
}

TEST(ExactAlgProperties, MatrixArithmeticLaws) {
    std::mt19937 rng(3);
    for (const Field& k : fields()) {
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t a = 1 + rng() % 3, b = 1 + rng() % 3, c = 1 + rng() % 3, d = 1 + rng() % 3;
            const Matrix x = random_matrix(rng, k, a, b);
            const Matrix y = random_matrix(rng, k, b, c);
            const Matrix y2 = random_matrix(rng, k, b, c);
            const Matrix z = random_matrix(rng, k, c, d);
            EXPECT_EQ((x * y) * z, x * (y * z));
            EXPECT_EQ(x * (y + y2), x * y + x * y2);
            EXPECT_EQ((y + y2) * z, y * z + y2 * z);
            EXPECT_EQ((y - y) * z, Matrix(k, b, d));
        }
    }
}
