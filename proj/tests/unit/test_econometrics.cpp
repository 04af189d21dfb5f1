#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "../oracles.hpp"
#include "konus/axioms.hpp"
#include "konus/econometrics.hpp"
#include "samples.hpp"

using namespace konus;

namespace {

std::vector<double> ar1_series(std::uint64_t seed, double b0, double b1, double sigma, std::size_t n) {
    Rng rng = substream(seed, {1});
    std::normal_distribution<double> noise(0.0, sigma);
    double z = b0 / (1 - b1);
    for (int burn = 0; burn < 200; ++burn) z = b0 + b1 * z + noise(rng);
    std::vector<double> out(n);
    for (double& v : out) {
        z = b0 + b1 * z + noise(rng);
        v = z;
    }
    return out;
}

std::vector<double> white_noise(std::uint64_t seed, std::size_t n) {
    Rng rng = substream(seed, {2});
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> out(n);
    for (double& v : out) v = noise(rng);
    return out;
}

}  // namespace

TEST(FitAr, ConstantSeries) {
    const std::vector<double> z{0.1, 0.1, 0.1, 0.1};
    const auto m = fit_ar(z);
    EXPECT_EQ(m.order, 0u);
    ASSERT_EQ(m.beta.size(), 1u);
    EXPECT_NEAR(m.beta[0], 0.1, 1e-15);
    EXPECT_EQ(m.sigma2, kVarianceFloor);
}

TEST(FitAr, TooShort) {
    EXPECT_THROW(fit_ar(std::vector<double>{1.0}), InputError);
    EXPECT_NO_THROW(fit_ar(std::vector<double>{1.0, 2.0}));
}

TEST(FitAr, MatchesClosedFormRegression) {
    const auto z = ar1_series(5, 0.02, 0.6, 0.05, 300);
    const auto m = fit_ar(z, 1);
    ASSERT_EQ(m.order, 1u);
    // Simple regression of z[t] on z[t-1], t = 1..n-1.
    const std::size_t n = z.size() - 1;
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t t = 1; t < z.size(); ++t) {
        sx += z[t - 1];
        sy += z[t];
        sxx += static_cast<long double>(z[t - 1]) * z[t - 1];
        sxy += static_cast<long double>(z[t - 1]) * z[t];
    }
    const long double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const long double icept = (sy - slope * sx) / n;
    EXPECT_NEAR(m.beta[1], static_cast<double>(slope), 1e-10);
    EXPECT_NEAR(m.beta[0], static_cast<double>(icept), 1e-10);
    long double rss = 0;
    for (std::size_t t = 1; t < z.size(); ++t) {
        const long double e = z[t] - icept - slope * z[t - 1];
        rss += e * e;
    }
    EXPECT_NEAR(m.sigma2, static_cast<double>(rss / n), 1e-12);
    EXPECT_EQ(m.n_eff, n);
    EXPECT_NEAR(m.aic, n * std::log(m.sigma2) + 4.0, 1e-9);
}

TEST(FitAr, RecoversAr1) {
    int within = 0, order_one = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto z = ar1_series(seed, 0.02, 0.6, 0.05, 500);
        const auto m = fit_ar(z);
        order_one += m.order == 1;
        if (m.order == 0) continue;
        const std::vector<double> truth{0.02, 0.6, 0.0};
        bool ok = true;
        for (std::size_t k = 0; k <= m.order; ++k)
            ok = ok && std::abs(m.beta[k] - truth[k]) <= 3.0 * m.std_errors[k];
        within += ok;
    }
    EXPECT_GE(within, 95);
    EXPECT_GE(order_one, 80);
}

TEST(FitAr, WhiteNoisePrefersOrderZero) {
    int zero = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) zero += fit_ar(white_noise(seed, 500)).order == 0;
    EXPECT_GT(zero, 50);
}

TEST(LogRelatives, SingleGood) {
    const auto z = log_relatives(samples::single_good({1, 2, 4}, {1, 1, 1}), 0);
    ASSERT_EQ(z.size(), 2u);
    EXPECT_NEAR(z[0], std::log(2.0), 1e-15);
    EXPECT_NEAR(z[1], std::log(2.0), 1e-15);
}

TEST(PriceModels, NeedThreePeriods) {
    EXPECT_THROW(fit_price_models(samples::two_period()), InputError);
}

TEST(Simulate, FirstPeriodObserved) {
    Rng rng = substream(80, {});
    const auto ts = oracle::random_statistics(rng, 6, 4);
    const auto models = fit_price_models(ts);
    for (int i = 0; i < 20; ++i) {
        const auto p = simulate_price_paths(ts, models, rng);
        ASSERT_EQ(p.rows(), 6u);
        for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(p(0, k), ts.price(0)[k]);
        for (double v : p.data()) EXPECT_GT(v, 0.0);
    }
}

TEST(Simulate, DegenerateNoiseReproducesPrices) {
    const auto ts = samples::single_good({1.0, 1.1, 1.21, 1.331, 1.4641}, {1, 1, 1, 1, 1});
    const auto models = fit_price_models(ts);
    ASSERT_EQ(models[0].order, 0u);
    EXPECT_EQ(models[0].sigma2, kVarianceFloor);
    Rng rng = substream(81, {});
    const auto p = simulate_price_paths(ts, models, rng);
    for (std::size_t t = 0; t < 5; ++t) EXPECT_NEAR(p(t, 0), ts.price(t)[0], 1e-5 * ts.price(t)[0]);
}

TEST(Simulate, OrderZeroMeanRelative) {
    const auto ts = samples::single_good({1.0, 1.0}, {1, 1});
    ARModel model;
    model.order = 0;
    model.beta = {0.03};
    model.sigma2 = 0.01;
    const std::vector<ARModel> models{model};
    Rng rng = substream(82, {});
    const int draws = 100000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        const auto p = simulate_price_paths(ts, models, rng);
        sum += std::log(p(1, 0) / p(0, 0));
    }
    EXPECT_NEAR(sum / draws, 0.03, 3.0 * 0.1 / std::sqrt(static_cast<double>(draws)));
}

TEST(Power, SingleGoodNeverRejects) {
    const auto ts = samples::single_good({1.0, 1.3, 0.9, 1.1, 1.2}, {2, 1, 3, 2, 1});
    const auto r = power_estimate(ts, 500, 7);
    EXPECT_EQ(r.rejections_g, 0u);
    EXPECT_EQ(r.rejections_h, 0u);
}

TEST(Power, PairedDominanceAndDeterminism) {
    Rng rng = substream(83, {});
    for (int i = 0; i < 4; ++i) {
        const auto ts = oracle::random_statistics(rng, 6, 4);
        const auto one = power_estimate(ts, 400, 11, 1);
        EXPECT_GE(one.rejections_h, one.rejections_g);
        for (std::size_t b = 0; b < one.trials; ++b)
            if (one.omega_g[b] > 1 + kRejectionMargin) EXPECT_GT(one.omega_h[b], 1 + kRejectionMargin);
        for (std::size_t workers : {2u, 8u}) {
            const auto many = power_estimate(ts, 400, 11, workers);
            EXPECT_EQ(many.rejections_g, one.rejections_g);
            EXPECT_EQ(many.rejections_h, one.rejections_h);
            EXPECT_EQ(many.omega_g, one.omega_g);
            EXPECT_EQ(many.omega_h, one.omega_h);
        }
    }
}

TEST(Power, SyntheticHomotheticLocked) {
    Rng rng = substream(84, {});
    const auto ts = oracle::ces_statistics(rng, 10, 6);
    ASSERT_TRUE(check_harp(ts, 1.0).satisfied);
    const auto r = power_estimate(ts, 2000, 2024, 4);
    EXPECT_GT(r.w_hat_h(), r.w_hat_g() + 0.1);
    // Locked from the first run.
    EXPECT_EQ(r.rejections_g, 1495u);
    EXPECT_EQ(r.rejections_h, 2000u);
}

TEST(Groups, FullSizeIsOwnVerdict) {
    Rng rng = substream(85, {});
    for (int i = 0; i < 10; ++i) {
        const auto ts = oracle::random_statistics(rng, 5, 4);
        const auto curve = random_group_probability(ts, {4}, 100, 3);
        ASSERT_EQ(curve.groups[0], 1u);
        EXPECT_TRUE(curve.exhaustive[0]);
        EXPECT_EQ(curve.p_garp[0], check_garp(ts).satisfied ? 1.0 : 0.0);
        EXPECT_EQ(curve.p_harp[0], check_harp(ts).satisfied ? 1.0 : 0.0);
    }
}

TEST(Groups, RejectsInvalidSizes) {
    Rng rng = substream(86, {});
    const auto ts = oracle::random_statistics(rng, 4, 5);
    EXPECT_THROW(random_group_probability(ts, {1}, 10, 1), InputError);
    EXPECT_THROW(random_group_probability(ts, {6}, 10, 1), InputError);
}

TEST(Groups, DominanceExhaustionAndDeterminism) {
    Rng rng = substream(87, {});
    const auto ts = oracle::random_statistics(rng, 6, 12, 0.2);
    const std::vector<std::size_t> sizes{2, 3, 6, 11, 12};
    const auto one = random_group_probability(ts, sizes, 300, 9, 1);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        EXPECT_LE(one.p_harp[i], one.p_garp[i]);
        EXPECT_GE(one.p_harp[i], 0.0);
        EXPECT_LE(one.p_garp[i], 1.0);
        EXPECT_EQ(one.exhaustive[i], binomial(12, sizes[i]) <= 300);
    }
    EXPECT_EQ(one.groups[0] + one.resampled[0], 66u);
    EXPECT_EQ(one.groups[4] + one.resampled[4], 1u);
    const auto many = random_group_probability(ts, sizes, 300, 9, 8);
    EXPECT_EQ(many.p_garp, one.p_garp);
    EXPECT_EQ(many.p_harp, one.p_harp);
    EXPECT_EQ(many.resampled, one.resampled);
}

TEST(Binomial, Values) {
    EXPECT_EQ(binomial(5, 2), 10u);
    EXPECT_EQ(binomial(196, 0), 1u);
    EXPECT_EQ(binomial(4, 5), 0u);
    EXPECT_EQ(binomial(60, 30), 118264581564861424u);
    EXPECT_EQ(binomial(196, 98), SIZE_MAX);
}
