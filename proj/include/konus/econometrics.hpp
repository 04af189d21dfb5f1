#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "konus/core.hpp"
#include "konus/random.hpp"

namespace konus {

inline constexpr double kVarianceFloor = 1e-12;

/// z^t = beta[0] + sum_k beta[k] z^(t-k) + e^t, e ~ N(0, sigma2).
struct ARModel {
    std::size_t order = 0;
    std::vector<double> beta;    // intercept first
    std::vector<double> std_errors;  // OLS standard errors of beta
    double sigma2 = kVarianceFloor;
    double aic = 0.0;
    std::size_t n_eff = 0;
    std::string good_id;
};

/// Fits AR(r) for r = 0..max_order by least squares on the common sample
/// t = max_order+1..n and keeps the smallest AIC = n_eff ln(sigma2) + 2(r+1),
/// ties going to the smaller order. sigma2 is the ML residual variance,
/// floored at kVarianceFloor. Orders whose regressors are collinear are
/// skipped. max_order shrinks to n - 2 for short series; n < 2 throws.
ARModel fit_ar(std::span<const double> z, std::size_t max_order = 2);

/// Log price relatives ln(P_i^t / P_i^(t-1)) for one good, t = 2..T.
std::vector<double> log_relatives(const TradeStatistics& ts, std::size_t good);

/// One AR model per good, fitted on its log price relatives. Needs T >= 3.
std::vector<ARModel> fit_price_models(const TradeStatistics& ts, std::size_t max_order = 2);

/// Simulated price panel: the first period is observed, the first `order`
/// relatives of each good are observed, later relatives follow the model
/// with fresh Gaussian noise. Goods are drawn in order, each over time.
Matrix<double> simulate_price_paths(const TradeStatistics& ts, const std::vector<ARModel>& models, Rng& rng);

struct PowerReport {
    std::size_t trials = 0;
    std::size_t rejections_g = 0;  // trials with omega_G > 1
    std::size_t rejections_h = 0;  // trials with omega_H > 1
    std::uint64_t seed = 0;
    std::vector<double> omega_g;   // per trial
    std::vector<double> omega_h;
    double w_hat_g() const { return trials ? static_cast<double>(rejections_g) / static_cast<double>(trials) : 0.0; }
    double w_hat_h() const { return trials ? static_cast<double>(rejections_h) / static_cast<double>(trials) : 0.0; }
};

/// An index counts as above 1 only beyond this margin, so exact
/// rationalizability that rounds to 1 + ulp is not a rejection.
inline constexpr double kRejectionMargin = 1e-12;

/// B statistics with AR-simulated prices and the observed quantities; trial b
/// draws from substream(seed, {b}). Both indices come from the same draw.
PowerReport power_estimate(const TradeStatistics& ts, std::size_t trials, std::uint64_t seed,
                           std::size_t workers = 1, std::size_t max_order = 2);

struct GroupProbabilityCurve {
    std::vector<std::size_t> sizes;
    std::vector<double> p_garp;
    std::vector<double> p_harp;
    std::vector<std::size_t> groups;     // groups evaluated per size
    std::vector<bool> exhaustive;        // all subsets of that size were used
    std::vector<std::size_t> resampled;  // draws rejected for an all-zero quantity row
    std::uint64_t seed = 0;
};

/// Fractions of random good subsets satisfying GARP(1) and HARP(1), per size.
/// Sizes with at most `samples` subsets are enumerated; otherwise uniform
/// subsets are drawn, sample j of size k from substream(seed, {k, j, attempt}).
GroupProbabilityCurve random_group_probability(const TradeStatistics& ts, const std::vector<std::size_t>& sizes,
                                                std::size_t samples, std::uint64_t seed, std::size_t workers = 1);

/// Number of k-subsets of m, saturating at SIZE_MAX.
std::size_t binomial(std::size_t m, std::size_t k);

}  // namespace konus
