// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "corpus.hpp"
#include "covcat/fibre_product.hpp"
#include "covcat/galois.hpp"
#include "oracles.hpp"

using namespace covcat;

namespace {

const Field kQ = Field::rationals();

oracle::Rows rows_of(const Matrix& m) {
    oracle::Rows out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out.push_back(m.row(r));
    }
    return out;
}

std::size_t paths_into(const Quiver& q, const std::string& to) {
    std::size_t n = 0;
    for (const auto& v : q.vertices) {
        n += oracle::count_paths(q, v, to);
    }
    return n;
}

std::size_t paths_out_of(const Quiver& q, const std::string& from) {
    std::size_t n = 0;
    for (const auto& v : q.vertices) {
        n += oracle::count_paths(q, from, v);
    }
    return n;
}

}  // namespace

TEST(Star, AtUInB) {
    const auto shape = corpus::shape_b();
    const PathCategory pc = path_category(shape.quiver, {}, kQ);
    const StarDecomposition s = star(*pc.category, pc.category->index_of("u"));
    EXPECT_EQ(s.source_dimension, paths_out_of(shape.quiver, "u"));
    EXPECT_EQ(s.target_dimension, paths_into(shape.quiver, "u"));
    EXPECT_EQ(s.source_dimension, 2u);
    EXPECT_EQ(s.target_dimension, 2u);
    EXPECT_EQ(s.total_dimension, 4u);
}

TEST(Star, AtTInB) {
    const auto shape = corpus::shape_b();
    const PathCategory pc = path_category(shape.quiver, {}, kQ);
    const StarDecomposition s = star(*pc.category, pc.category->index_of("t"));
    EXPECT_EQ(s.source_dimension, paths_out_of(shape.quiver, "t"));
    EXPECT_EQ(s.source_dimension, 4u);
    EXPECT_EQ(s.target_dimension, 1u);
    EXPECT_EQ(s.total_dimension, 5u);
    // Summands follow object order: s, t, u.
    ASSERT_EQ(s.source_star.size(), 3u);
    EXPECT_EQ(s.source_star[0].basis, (std::vector<std::string>{"a", "c*b"}));
}

TEST(Star, PointCountsIdentityTwice) {
    const PathCategory pc = path_category(Quiver{{"p"}, {}}, {}, kQ);
    EXPECT_EQ(star(*pc.category, 0).total_dimension, 2u);
}

TEST(CheckCovering, F1HasCertificateWithTwoByTwoBlocks) {
    const corpus::Cover f1 = corpus::cover_f1();
    const CoveringCheck check = check_covering(f1.functor);
    ASSERT_TRUE(check);
    const CoveringCertificate& cert = *check.certificate;
    for (const auto& fibre : cert.fibres) {
        EXPECT_EQ(fibre.size(), 2u);
    }
    const auto& c2 = *f1.cover.category;
    const auto& b = *f1.base.category;
    const FibreBlock* block = cert.find(StarSide::Outgoing, c2.index_of("t0"), b.index_of("s"));
    ASSERT_NE(block, nullptr);
    // Columns: c0∘b0 (into s0) then a0 (into s1); rows: a, c∘b.
    EXPECT_EQ(block->partners, (std::vector<ObjectIndex>{c2.index_of("s0"), c2.index_of("s1")}));
    EXPECT_EQ(block->matrix, Matrix::from_rows(kQ, {{0, 1}, {1, 0}}));
    EXPECT_EQ(oracle::rank(rows_of(block->matrix), oracle::Arith{0}), 2u);
    ASSERT_TRUE(block->inverse);
    EXPECT_EQ(block->matrix * *block->inverse, Matrix::identity(kQ, 2));
    EXPECT_TRUE(verify_certificate(cert));
}

TEST(CheckCovering, F2BlockStaysFullRank) {
    const corpus::Cover f1 = corpus::cover_f1();
    const LinearFunctor f2 = corpus::twisted_like_f2(f1);
    const CoveringCheck check = check_covering(f2);
    ASSERT_TRUE(check);
    const auto& c2 = *f1.cover.category;
    const FibreBlock* block =
        check.certificate->find(StarSide::Outgoing, c2.index_of("t0"), f1.base.category->index_of("s"));
    ASSERT_NE(block, nullptr);
    EXPECT_EQ(block->matrix, Matrix::from_rows(kQ, {{0, 1}, {1, 1}}));
    EXPECT_EQ(oracle::rank(rows_of(block->matrix), oracle::Arith{0}), 2u);
}

TEST(CheckCovering, ProjectionOfMixedSquareFailsAtFirstBlock) {
    const corpus::Cover f1 = corpus::cover_f1();
    const LinearFunctor f2 = corpus::twisted_like_f2(f1);
    const FibreProduct p = fibre_product(f1.functor, f2);
    const CoveringCheck check = check_covering(p.first_projection);
    ASSERT_FALSE(check);
    const CoveringFailure& failure = *check.failure;
    EXPECT_EQ(failure.reason, CoveringFailure::Reason::BlockNotInvertible);
    ASSERT_TRUE(failure.block);
    const auto& prod = *p.category;
    const auto& c2 = *f1.cover.category;
    EXPECT_EQ(failure.block->side, StarSide::Outgoing);
    EXPECT_EQ(prod.object_name(failure.block->lift), "(t0,t0)");
    EXPECT_EQ(c2.object_name(failure.block->base), "t0");
    EXPECT_EQ(c2.object_name(failure.block->other), "s1");
    EXPECT_EQ(failure.block->source_dimension(), 0u);
    EXPECT_EQ(failure.block->target_dimension(), 1u);
    EXPECT_LT(failure.rank, failure.block->target_dimension());  // not surjective
}

TEST(CheckCovering, NonSurjectiveInclusionNamesMissingObject) {
    const corpus::Cover f1 = corpus::cover_f1();
    const auto& b = *f1.base.category;
    const std::vector<ObjectIndex> objects{b.index_of("t"), b.index_of("u")};
    const CategoryWithFunctor sub = full_subcategory(f1.base.category, objects);
    const CoveringCheck check = check_covering(sub.functor);
    ASSERT_FALSE(check);
    EXPECT_EQ(check.failure->reason, CoveringFailure::Reason::NotSurjective);
    EXPECT_EQ(b.object_name(check.failure->missing_object), "s");
}

TEST(CheckCovering, InvalidFunctorIsRejected) {
    const corpus::Cover f1 = corpus::cover_f1();
    std::map<HomKey, Matrix> m = f1.functor.matrices();
    const ObjectIndex t0 = f1.cover.category->index_of("t0");
    m.insert_or_assign(HomKey{t0, t0}, Matrix::from_rows(kQ, {{3}}));
    const LinearFunctor broken(f1.functor.source_ptr(), f1.functor.target_ptr(), f1.functor.object_map(), m);
    const CoveringCheck check = check_covering(broken);
    ASSERT_FALSE(check);
    EXPECT_EQ(check.failure->reason, CoveringFailure::Reason::InvalidFunctor);
}

TEST(CheckCovering, KIsACovering) {
    EXPECT_TRUE(check_covering(corpus::cover_k().functor));
}

TEST(CheckCovering, CollapsingFunctorFailsInjectivity) {
    // Every arrow of the Kronecker double cover sent to α: blocks are singular.
    corpus::Twist twist;
    for (const char* a : {"alpha0", "alpha1", "beta0", "beta1"}) {
        twist[a] = {PathTerm{{"alpha"}, Scalar(1)}};
    }
    const corpus::Cover flat = corpus::cyclic_cover(corpus::shape_kronecker(), 2, kQ, twist);
    const CoveringCheck check = check_covering(flat.functor);
    ASSERT_FALSE(check);
    ASSERT_TRUE(check.failure->block);
    EXPECT_EQ(check.failure->block->source_dimension(), 2u);
    EXPECT_EQ(check.failure->rank, 1u);
}

TEST(PropConnected, HoldsForF1AndProjection) {
    const corpus::Cover f1 = corpus::cover_f1();
    const CoveringCheck check = check_covering(f1.functor);
    ASSERT_TRUE(check);
    EXPECT_TRUE(connected_components(f1.functor.source()).connected());
    EXPECT_TRUE(connected_components(f1.functor.target()).connected());
    EXPECT_TRUE(prop_connected_check(*check.certificate));

    const CategoryWithFunctor p = product_with_set(f1.base.category, {"0", "1"});
    const CoveringCheck pc = check_covering(p.functor);
    ASSERT_TRUE(pc);
    EXPECT_FALSE(connected_components(p.functor.source()).connected());
    EXPECT_TRUE(prop_connected_check(*pc.certificate));
}

// Properties over the corpus.

TEST(CoveringProperties, StarsMatchAtEveryLift) {
    for (const auto& cover : corpus::covering_corpus()) {
        const CoveringCheck check = check_covering(cover.functor);
        ASSERT_TRUE(check) << cover.name;
        EXPECT_TRUE(verify_certificate(*check.certificate)) << cover.name;
        EXPECT_TRUE(prop_connected_check(*check.certificate)) << cover.name;
        const auto& c = cover.functor.source();
        const auto& b = cover.functor.target();
        for (ObjectIndex x = 0; x < c.object_count(); ++x) {
            EXPECT_EQ(star(c, x).total_dimension, star(b, cover.functor(x)).total_dimension)
                << cover.name << " at " << c.object_name(x);
        }
        for (const auto& block : check.certificate->blocks) {
            ASSERT_TRUE(block.inverse);
            EXPECT_EQ(block.matrix * *block.inverse, Matrix::identity(c.field(), block.matrix.rows()));
        }
    }
}

TEST(CoveringProperties, FibreCardinalityIsConstantOnConnectedSources) {
    for (const auto& cover : corpus::covering_corpus()) {
        const CoveringCheck check = check_covering(cover.functor);
        ASSERT_TRUE(check);
        if (!connected_components(cover.functor.source()).connected()) {
            continue;
        }
        for (const auto& fibre : check.certificate->fibres) {
            EXPECT_EQ(fibre.size(), cover.sheets) << cover.name;
        }
    }
}

TEST(CoveringProperties, ProductProjectionsAreCoverings) {
    for (const auto& shape : corpus::all_base_shapes()) {
        const CategoryPtr b = path_category(shape.quiver, shape.relations, kQ).category;
        for (std::size_t n = 1; n <= 3; ++n) {
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < n; ++i) {
                labels.push_back(std::to_string(i));
            }
            const CategoryWithFunctor p = product_with_set(b, labels);
            const CoveringCheck check = check_covering(p.functor);
            ASSERT_TRUE(check) << shape.name;
            for (const auto& fibre : check.certificate->fibres) {
                EXPECT_EQ(fibre.size(), n);
            }
        }
    }
}
