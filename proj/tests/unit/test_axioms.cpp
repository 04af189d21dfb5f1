#include <gtest/gtest.h>

#include <cmath>

#include "../oracles.hpp"
#include "konus/afriat.hpp"
#include "konus/axioms.hpp"
#include "konus/irrationality.hpp"
#include "samples.hpp"

using namespace konus;

namespace {

// A GARP witness must be a genuine violation.
void expect_garp_witness_valid(const TradeStatistics& ts, const AxiomVerdict& v) {
    const auto* w = std::get_if<GarpWitness>(&v.witness);
    ASSERT_NE(w, nullptr);
    ASSERT_GE(w->chain.size(), 2u);
    const auto px = oracle::px_of(ts);
    for (std::size_t i = 0; i + 1 < w->chain.size(); ++i) {
        const std::size_t a = w->chain[i], b = w->chain[i + 1];
        EXPECT_NE(a, b);
        EXPECT_GE(px(a, a) / px(a, b), v.omega);
    }
    EXPECT_GT(px(w->violator(), w->violator()) / px(w->violator(), w->origin()), v.omega);
}

void expect_harp_witness_valid(const TradeStatistics& ts, const AxiomVerdict& v) {
    const auto* w = std::get_if<HarpWitness>(&v.witness);
    ASSERT_NE(w, nullptr);
    ASSERT_GE(w->cycle.size(), 2u);
    const auto c = oracle::paasche_of(ts);
    double prod = 1.0;
    for (std::size_t i = 0; i < w->cycle.size(); ++i) {
        const std::size_t a = w->cycle[i], b = w->cycle[(i + 1) % w->cycle.size()];
        EXPECT_NE(a, b);
        prod *= c(a, b);
    }
    EXPECT_NEAR(prod, w->product, 1e-12 * prod);
    EXPECT_GT(prod, std::pow(v.omega, static_cast<double>(w->cycle.size())));
}

}  // namespace

TEST(Garp, ThreeRaysSatisfied) {
    const auto v = check_garp(samples::three_rays(), 1.0);
    EXPECT_TRUE(v.satisfied);
    EXPECT_TRUE(std::holds_alternative<std::monostate>(v.witness));
    EXPECT_TRUE(oracle::garp_holds(samples::three_rays(), 1.0));
}

TEST(Garp, ThreeRaysRelationAndClosure) {
    const auto r = revealed_preference(cross_value_matrix(samples::three_rays()), 1.0);
    // Only 1 -> 2 among distinct periods; the reflexive diagonal is left out.
    BooleanRelation expected(3);
    expected.set(0, 1);
    EXPECT_EQ(r, expected);
    EXPECT_EQ(boolean_closure(r), expected);
}

TEST(Garp, TwoPeriodAtOne) {
    const auto ts = samples::two_period();
    const auto px = cross_value_matrix(ts);
    EXPECT_EQ(px.values, Matrix<double>::from_rows({{3, 4}, {3, 5}}));
    EXPECT_TRUE(check_garp(ts, 1.0).satisfied);
    EXPECT_TRUE(oracle::garp_holds(ts, 1.0));
}

TEST(Garp, TwoPeriodAtThreeQuarters) {
    const auto ts = samples::two_period();
    const auto v = check_garp(ts, 0.75);
    EXPECT_FALSE(v.satisfied);
    EXPECT_FALSE(oracle::garp_holds(ts, 0.75));
    expect_garp_witness_valid(ts, v);
    EXPECT_EQ(std::get<GarpWitness>(v.witness).chain, (std::vector<std::size_t>{0, 1}));
}

TEST(Garp, RejectsNonPositiveOmega) {
    EXPECT_THROW(check_garp(samples::two_period(), 0.0), InputError);
    EXPECT_THROW(check_harp(samples::two_period(), -1.0), InputError);
}

TEST(Harp, ThreeRaysSatisfied) {
    EXPECT_TRUE(check_harp(samples::three_rays(), 1.0).satisfied);
    EXPECT_TRUE(oracle::harp_holds(samples::three_rays(), 1.0));
}

TEST(Harp, TwoPeriodViolatedAtOne) {
    const auto ts = samples::two_period();
    const auto v = check_harp(ts, 1.0);
    EXPECT_FALSE(v.satisfied);
    expect_harp_witness_valid(ts, v);
    const auto& w = std::get<HarpWitness>(v.witness);
    EXPECT_EQ(w.cycle, (std::vector<std::size_t>{0, 1}));
    EXPECT_DOUBLE_EQ(w.product, 1.25);
    EXPECT_FALSE(oracle::harp_holds(ts, 1.0));
}

TEST(Harp, TwoPeriodSatisfiedAtOnePointOneTwo) {
    EXPECT_TRUE(check_harp(samples::two_period(), 1.12).satisfied);
    EXPECT_TRUE(oracle::harp_holds(samples::two_period(), 1.12));
}

TEST(BruteForceHarp, ThreeRays) {
    EXPECT_TRUE(brute_force_harp(samples::three_rays(), 1.0, 3).satisfied);
}

TEST(BruteForceHarp, TwoPeriod) {
    const auto v = brute_force_harp(samples::two_period(), 1.0, 2);
    EXPECT_FALSE(v.satisfied);
    EXPECT_EQ(std::get<HarpWitness>(v.witness).cycle, (std::vector<std::size_t>{0, 1}));
}

TEST(BruteForceHarp, SinglePeriodVacuous) {
    EXPECT_TRUE(brute_force_harp(samples::single_good({3}, {1}), 1.0, 5).satisfied);
}

TEST(BruteForceHarp, LiteralReadingRejectsOmegaBelowOne) {
    const auto lit = CycleReading::Literal;
    const auto one = samples::single_good({3}, {1});
    EXPECT_TRUE(brute_force_harp(one, 1.0, 5, 0.0, 20'000'000, lit).satisfied);
    const auto v = brute_force_harp(one, 0.99, 5, 0.0, 20'000'000, lit);
    EXPECT_FALSE(v.satisfied);
    EXPECT_EQ(std::get<HarpWitness>(v.witness).cycle, (std::vector<std::size_t>{0}));
    EXPECT_DOUBLE_EQ(std::get<HarpWitness>(v.witness).product, 1.0);
    EXPECT_FALSE(brute_force_harp(samples::three_rays(), 0.99, 3, 0.0, 20'000'000, lit).satisfied);
}

TEST(BruteForceHarp, ReadingsAgreeAtOmegaAtLeastOne) {
    Rng rng = substream(32, {});
    for (int i = 0; i < 100; ++i) {
        const std::size_t T = 1 + static_cast<std::size_t>(i % 5);
        const auto ts = oracle::random_statistics(rng, T, 3);
        for (double omega : {1.0, 1.05, 1.3})
            ASSERT_EQ(brute_force_harp(ts, omega, T).satisfied,
                      brute_force_harp(ts, omega, T, 0.0, 20'000'000, CycleReading::Literal).satisfied);
    }
}

TEST(BruteForceHarp, BudgetExceeded) {
    Rng rng = substream(31, {});
    const auto ts = oracle::random_statistics(rng, 8, 2);
    EXPECT_THROW(brute_force_harp(ts, 100.0, 8, 0.0, 1000), OracleTooLarge);
}

TEST(Axioms, RandomAgreeWithOracles) {
    Rng rng = substream(32, {});
    int garp_fail = 0, harp_fail = 0;
    for (int i = 0; i < 300; ++i) {
        const std::size_t T = 2 + static_cast<std::size_t>(i % 5), m = 1 + static_cast<std::size_t>(i % 4);
        const auto ts = oracle::random_statistics(rng, T, m, 0.2);
        const auto best = oracle::brute_cycle_geomean(oracle::paasche_of(ts), false);
        for (double omega : {0.8, 0.95, 1.0, 1.05, 1.2}) {
            // Cycle products equal to omega^k in exact arithmetic are decided by rounding.
            if (std::abs(best->geomean / omega - 1.0) < 1e-12) continue;
            const auto g = check_garp(ts, omega);
            ASSERT_EQ(g.satisfied, oracle::garp_holds(ts, omega)) << "instance " << i << " omega " << omega;
            if (!g.satisfied) expect_garp_witness_valid(ts, g);
            const auto h = check_harp(ts, omega);
            ASSERT_EQ(h.satisfied, oracle::harp_holds(ts, omega)) << "instance " << i << " omega " << omega;
            ASSERT_EQ(h.satisfied, brute_force_harp(ts, omega, T).satisfied);
            if (!h.satisfied) expect_harp_witness_valid(ts, h);
            garp_fail += !g.satisfied;
            harp_fail += !h.satisfied;
        }
    }
    EXPECT_GT(garp_fail, 50);
    EXPECT_GT(harp_fail, garp_fail);
}

TEST(Axioms, MonotoneInOmega) {
    Rng rng = substream(33, {});
    for (int i = 0; i < 100; ++i) {
        const auto ts = oracle::random_statistics(rng, 5, 3);
        bool garp_seen = false, harp_seen = false;
        for (double omega = 0.5; omega <= 2.0; omega += 0.01) {
            const bool g = check_garp(ts, omega).satisfied, h = check_harp(ts, omega).satisfied;
            EXPECT_TRUE(g || !garp_seen) << "GARP lost at " << omega;
            EXPECT_TRUE(h || !harp_seen) << "HARP lost at " << omega;
            garp_seen = garp_seen || g;
            harp_seen = harp_seen || h;
        }
    }
}

TEST(Axioms, HarpImpliesGarp) {
    Rng rng = substream(34, {});
    for (int i = 0; i < 200; ++i) {
        const auto ts = oracle::random_statistics(rng, 2 + static_cast<std::size_t>(i % 6), 3);
        for (double omega : {0.9, 1.0, 1.1, 1.3})
            if (check_harp(ts, omega).satisfied) EXPECT_TRUE(check_garp(ts, omega).satisfied);
    }
}

TEST(Axioms, ScaleInvariance) {
    Rng rng = substream(35, {});
    std::uniform_real_distribution<double> u(0.05, 20.0);
    for (int i = 0; i < 60; ++i) {
        const auto ts = oracle::random_statistics(rng, 4, 3);
        for (double omega : {1.0, 1.1}) {
            const bool harp = check_harp(ts, omega).satisfied;
            for (int k = 0; k < 20; ++k) {
                std::vector<double> mu(4);
                for (double& v : mu) v = u(rng);
                const auto scaled = rescale_quantities(ts, mu);
                EXPECT_EQ(check_harp(scaled, omega).satisfied, harp);
                if (harp) EXPECT_TRUE(check_garp(scaled, omega).satisfied);
            }
        }
    }
}

TEST(Axioms, LaspeyresAtLeastPaascheUnderHarp) {
    Rng rng = substream(36, {});
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const auto ts = i % 2 ? oracle::ces_statistics(rng, 5, 3) : oracle::random_statistics(rng, 3, 3);
        if (!check_harp(ts, 1.0).satisfied) continue;
        const auto px = cross_value_matrix(ts);
        for (std::size_t a = 0; a < ts.periods(); ++a)
            for (std::size_t b = 0; b < ts.periods(); ++b) {
                const double lhs = px(a, b) * px(b, a), rhs = px(a, a) * px(b, b);
                EXPECT_GE(lhs, rhs * (1.0 - 1e-12));
            }
        ++checked;
    }
    EXPECT_GT(checked, 150);
}

TEST(Describe, MentionsLabels) {
    const auto ts = samples::two_period();
    EXPECT_NE(describe(check_harp(ts, 1.0).witness, ts, 1.0).find("1 -> 2 -> 1"), std::string::npos);
    EXPECT_NE(describe(check_garp(ts, 0.75).witness, ts, 0.75).find("1 -> 2"), std::string::npos);
    EXPECT_EQ(describe(Witness{}, ts, 1.0), "satisfied");
}

TEST(SingleGood, HarpHoldsExactly) {
    Rng rng = substream(31, {});
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> p(2 + static_cast<std::size_t>(i % 6)), x(p.size());
        for (std::size_t t = 0; t < p.size(); ++t) {
            p[t] = u(rng);
            x[t] = u(rng);
        }
        const auto ts = samples::single_good(p, x);
        EXPECT_TRUE(check_harp(ts).satisfied);
        EXPECT_TRUE(check_garp(ts).satisfied);
        EXPECT_EQ(harp_irrationality(ts), 1.0);
        EXPECT_FALSE(check_harp(ts, 0.999).satisfied);
        const auto lm = solve_harp_multipliers(ts);
        for (std::size_t t = 0; t < p.size(); ++t) EXPECT_NEAR(lm.lambda[t], p[0] / p[t], 1e-15 * lm.lambda[t]);
    }
}

TEST(Gerschenkron, LaspeyresAbovePaascheUnderHarp) {
    const auto px = cross_value_matrix(samples::two_period());
    EXPECT_DOUBLE_EQ(laspeyres_index(px, 0, 1), 1.0);
    EXPECT_DOUBLE_EQ(paasche_index(px, 0, 1), 5.0 / 4.0);
    Rng rng = substream(32, {});
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const auto ts = oracle::ces_statistics(rng, 2 + static_cast<std::size_t>(i % 5), 3);
        if (!check_harp(ts).satisfied) continue;
        const auto cv = cross_value_matrix(ts);
        for (std::size_t a = 0; a < ts.periods(); ++a)
            for (std::size_t b = 0; b < ts.periods(); ++b) {
                EXPECT_GE(laspeyres_index(cv, a, b), paasche_index(cv, a, b) * (1 - 1e-12));
                ++checked;
            }
    }
    EXPECT_GT(checked, 500);
}
