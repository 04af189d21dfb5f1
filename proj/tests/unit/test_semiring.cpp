#include <gtest/gtest.h>

#include <cmath>

#include "../oracles.hpp"
#include "konus/semiring.hpp"

using namespace konus;

namespace {

const Matrix<double> kThreeRayPaasche = Matrix<double>::from_rows({{1, 1, 0.25}, {1, 1, 0.5}, {1, 0.5, 1}});

}  // namespace

TEST(MaxTimesClosure, ThreeRayPaascheMatchesOracle) {
    const auto got = maxtimes_closure(kThreeRayPaasche);
    const auto ref = oracle::brute_closure(kThreeRayPaasche);
    ASSERT_FALSE(got.diverged);
    ASSERT_FALSE(ref.diverged);
    const auto expected = Matrix<double>::from_rows({{1, 1, 0.5}, {1, 1, 0.5}, {1, 1, 1}});
    EXPECT_EQ(ref.values, expected);
    EXPECT_EQ(got.values, expected);
}

TEST(MaxTimesClosure, SingleSelfLoop) {
    const auto got = maxtimes_closure(Matrix<double>::from_rows({{0.5}}));
    EXPECT_FALSE(got.diverged);
    EXPECT_EQ(got(0, 0), 0.5);
}

TEST(MaxTimesClosure, DivergentTwoCycle) {
    const auto m = Matrix<double>::from_rows({{1, 2}, {1, 1}});
    EXPECT_TRUE(oracle::brute_closure(m).diverged);
    const auto got = maxtimes_closure(m);
    EXPECT_TRUE(got.diverged);
    EXPECT_TRUE(std::isinf(got(0, 1)));
}

TEST(MaxTimesClosure, RejectsBadInput) {
    EXPECT_THROW(maxtimes_closure(Matrix<double>(2, 3, 1.0)), std::invalid_argument);
    EXPECT_THROW(maxtimes_closure(Matrix<double>::from_rows({{1, -1}, {0, 0}})), std::invalid_argument);
}

TEST(MaxTimesClosure, ToleranceLoosensDivergence) {
    const auto m = Matrix<double>::from_rows({{0, 1.0000001}, {1, 0}});
    EXPECT_TRUE(maxtimes_closure(m).diverged);
    EXPECT_FALSE(maxtimes_closure(m, 1e-6).diverged);
}

TEST(MaxTimesClosure, RandomAgreesWithEnumeration) {
    Rng rng = substream(21, {});
    int diverged = 0;
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i % 6);
        const auto m = oracle::random_positive_matrix(rng, n, 0.05, 1.15);
        const auto got = maxtimes_closure(m);
        const auto ref = oracle::brute_closure(m);
        ASSERT_EQ(got.diverged, ref.diverged) << "instance " << i;
        diverged += got.diverged;
        if (got.diverged) continue;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) EXPECT_NEAR(got(a, b), ref.values(a, b), 1e-12 * ref.values(a, b));
    }
    EXPECT_GT(diverged, 10);
    EXPECT_LT(diverged, 290);
}

TEST(MaxTimesClosure, Idempotent) {
    Rng rng = substream(22, {});
    for (int i = 0; i < 100; ++i) {
        const auto m = oracle::random_positive_matrix(rng, 5, 0.0, 0.9);
        const auto once = maxtimes_closure(m);
        ASSERT_FALSE(once.diverged);
        const auto twice = maxtimes_closure(once.values);
        ASSERT_FALSE(twice.diverged);
        for (std::size_t a = 0; a < 5; ++a)
            for (std::size_t b = 0; b < 5; ++b) EXPECT_NEAR(twice(a, b), once(a, b), 1e-12 * once(a, b));
    }
}

TEST(MaxTimesClosure, Monotone) {
    Rng rng = substream(23, {});
    std::uniform_real_distribution<double> bump(1.0, 1.1);
    for (int i = 0; i < 100; ++i) {
        const auto m = oracle::random_positive_matrix(rng, 5, 0.0, 0.8);
        Matrix<double> larger = m;
        for (std::size_t a = 0; a < 5; ++a)
            for (std::size_t b = 0; b < 5; ++b) larger(a, b) *= bump(rng);
        const auto lo = maxtimes_closure(m), hi = maxtimes_closure(larger);
        ASSERT_FALSE(hi.diverged);
        for (std::size_t a = 0; a < 5; ++a)
            for (std::size_t b = 0; b < 5; ++b) EXPECT_LE(lo(a, b), hi(a, b));
    }
}

TEST(BooleanClosure, FixedPointRelation) {
    BooleanRelation r(3);
    r.set(0, 0);
    r.set(0, 1);
    r.set(1, 1);
    r.set(2, 2);
    EXPECT_EQ(boolean_closure(r), r);
}

TEST(BooleanClosure, IdentityStaysIdentity) {
    BooleanRelation r(4);
    for (std::size_t i = 0; i < 4; ++i) r.set(i, i);
    EXPECT_EQ(boolean_closure(r), r);
}

TEST(BooleanClosure, AddsTransitiveLink) {
    BooleanRelation r(3);
    r.set(0, 1);
    r.set(1, 2);
    const auto c = boolean_closure(r);
    EXPECT_TRUE(c(0, 2));
    EXPECT_FALSE(c(2, 0));
    EXPECT_FALSE(c(0, 0));
}

TEST(CycleGeomean, SingleTwoCycle) {
    const auto m = Matrix<double>::from_rows({{1, 1.25}, {1, 1}});
    const auto got = max_cycle_geomean(m, 2);
    ASSERT_TRUE(got);
    const auto ref = oracle::brute_cycle_geomean(m, false);
    EXPECT_NEAR(ref->geomean, std::sqrt(1.25), 1e-15);
    EXPECT_NEAR(got->value, 1.1180339887, 1e-9);
    EXPECT_EQ(got->cycle, (std::vector<std::size_t>{0, 1}));
}

TEST(CycleGeomean, ThreeRayPaasche) {
    const auto got = max_cycle_geomean(kThreeRayPaasche, 2);
    ASSERT_TRUE(got);
    EXPECT_NEAR(oracle::brute_cycle_geomean(kThreeRayPaasche, false)->geomean, 1.0, 1e-15);
    EXPECT_NEAR(got->value, 1.0, 1e-12);
    EXPECT_EQ(got->cycle, (std::vector<std::size_t>{0, 1}));
}

TEST(CycleGeomean, AllOnes) {
    const auto got = max_cycle_geomean(Matrix<double>(4, 4, 1.0), 2);
    ASSERT_TRUE(got);
    EXPECT_NEAR(got->value, 1.0, 1e-12);
}

TEST(CycleGeomean, NoCycleForSinglePeriod) {
    EXPECT_FALSE(max_cycle_geomean(Matrix<double>(1, 1, 1.0), 2));
    const auto with_loop = max_cycle_geomean(Matrix<double>(1, 1, 3.0), 1);
    ASSERT_TRUE(with_loop);
    EXPECT_NEAR(with_loop->value, 3.0, 1e-12);
}

TEST(CycleGeomean, RandomAgreesWithEnumeration) {
    Rng rng = substream(24, {});
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 7);
        const auto m = oracle::random_positive_matrix(rng, n, 0.1, 3.0);
        for (bool loops : {false, true}) {
            const auto got = max_cycle_geomean(m, loops ? 1 : 2);
            const auto ref = oracle::brute_cycle_geomean(m, loops);
            ASSERT_TRUE(got && ref);
            EXPECT_NEAR(got->value, ref->geomean, 1e-12 * ref->geomean) << "instance " << i;
            // The returned cycle attains the value.
            double logsum = 0.0;
            for (std::size_t k = 0; k < got->cycle.size(); ++k)
                logsum += std::log(m(got->cycle[k], got->cycle[(k + 1) % got->cycle.size()]));
            EXPECT_NEAR(std::exp(logsum / static_cast<double>(got->cycle.size())), got->value, 1e-12 * got->value);
            if (!loops) EXPECT_GE(got->cycle.size(), 2u);
        }
    }
}

TEST(CycleGeomean, AtMostOneIffNoDivergence) {
    Rng rng = substream(25, {});
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 5);
        auto m = oracle::random_positive_matrix(rng, n, 0.3, 1.3);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = 0.0;
        const auto best = max_cycle_geomean(m, 2);
        const auto closure = maxtimes_closure(m);
        if (std::abs(best->value - 1.0) < 1e-12) continue;
        EXPECT_EQ(best->value <= 1.0, !closure.diverged);
    }
}
