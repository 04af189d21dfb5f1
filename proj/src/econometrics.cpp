#include "konus/econometrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "konus/axioms.hpp"
#include "konus/irrationality.hpp"
#include "konus/parallel.hpp"

namespace konus {

ARModel fit_ar(std::span<const double> z, std::size_t max_order) {
    const std::size_t n = z.size();
    if (n < 2) throw InputError("fit_ar: series needs at least 2 observations");
    max_order = std::min(max_order, n - 2);
    const std::size_t start = max_order;  // 0-based first target
    const auto n_eff = static_cast<Eigen::Index>(n - start);

    ARModel best;
    bool found = false;
    Eigen::VectorXd y(n_eff);
    for (Eigen::Index i = 0; i < n_eff; ++i) y[i] = z[start + static_cast<std::size_t>(i)];

    for (std::size_t r = 0; r <= max_order; ++r) {
        const auto p = static_cast<Eigen::Index>(r + 1);
        Eigen::MatrixXd x(n_eff, p);
        for (Eigen::Index i = 0; i < n_eff; ++i) {
            const std::size_t t = start + static_cast<std::size_t>(i);
            x(i, 0) = 1.0;
            for (std::size_t k = 1; k <= r; ++k) x(i, static_cast<Eigen::Index>(k)) = z[t - k];
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
        if (qr.rank() < p) continue;
        const Eigen::VectorXd beta = qr.solve(y);
        const Eigen::VectorXd resid = y - x * beta;
        const double rss = resid.squaredNorm();
        const double sigma2 = std::max(rss / static_cast<double>(n_eff), kVarianceFloor);
        const double aic = static_cast<double>(n_eff) * std::log(sigma2) + 2.0 * static_cast<double>(r + 1);
        if (found && !(aic < best.aic)) continue;

        ARModel m;
        m.order = r;
        m.beta.assign(beta.data(), beta.data() + p);
        m.sigma2 = sigma2;
        m.aic = aic;
        m.n_eff = static_cast<std::size_t>(n_eff);
        const Eigen::Index dof = n_eff - p;
        const double s2 = dof > 0 ? rss / static_cast<double>(dof) : sigma2;
        const Eigen::MatrixXd xtx_inv = (x.transpose() * x).inverse();
        m.std_errors.resize(static_cast<std::size_t>(p));
        for (Eigen::Index k = 0; k < p; ++k) m.std_errors[static_cast<std::size_t>(k)] = std::sqrt(s2 * xtx_inv(k, k));
        best = std::move(m);
        found = true;
    }
    if (!found) throw InputError("fit_ar: no identifiable model");
    return best;
}

std::vector<double> log_relatives(const TradeStatistics& ts, std::size_t good) {
    std::vector<double> z;
    for (std::size_t t = 1; t < ts.periods(); ++t) z.push_back(std::log(ts.price(t)[good] / ts.price(t - 1)[good]));
    return z;
}

std::vector<ARModel> fit_price_models(const TradeStatistics& ts, std::size_t max_order) {
    if (ts.periods() < 3) throw InputError("price models need at least 3 periods");
    std::vector<ARModel> out;
    out.reserve(ts.goods());
    for (std::size_t i = 0; i < ts.goods(); ++i) {
        out.push_back(fit_ar(log_relatives(ts, i), max_order));
        out.back().good_id = ts.good_ids()[i];
    }
    return out;
}

Matrix<double> simulate_price_paths(const TradeStatistics& ts, const std::vector<ARModel>& models, Rng& rng) {
    const std::size_t T = ts.periods(), m = ts.goods();
    if (models.size() != m) throw InputError("simulate_price_paths: one model per good required");
    Matrix<double> out(T, m);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> z(T, 0.0);  // z[t] is the relative from t-1 to t
    for (std::size_t i = 0; i < m; ++i) {
        const ARModel& mod = models[i];
        const double sd = std::sqrt(mod.sigma2);
        out(0, i) = ts.price(0)[i];
        for (std::size_t t = 1; t < T; ++t) {
            if (t <= mod.order) {
                z[t] = std::log(ts.price(t)[i] / ts.price(t - 1)[i]);
            } else {
                double v = mod.beta[0];
                for (std::size_t k = 1; k <= mod.order; ++k) v += mod.beta[k] * z[t - k];
                z[t] = v + sd * normal(rng);
            }
            out(t, i) = out(t - 1, i) * std::exp(z[t]);
        }
    }
    return out;
}

PowerReport power_estimate(const TradeStatistics& ts, std::size_t trials, std::uint64_t seed, std::size_t workers,
                           std::size_t max_order) {
    const std::vector<ARModel> models = fit_price_models(ts, max_order);
    PowerReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.omega_g.assign(trials, 0.0);
    rep.omega_h.assign(trials, 0.0);
    parallel_for(trials, workers, [&](std::size_t b) {
        Rng rng = substream(seed, {b});
        const TradeStatistics sim = with_prices(ts, simulate_price_paths(ts, models, rng));
        rep.omega_g[b] = garp_irrationality(sim).value;
        rep.omega_h[b] = harp_irrationality(sim);
    });
    for (std::size_t b = 0; b < trials; ++b) {
        rep.rejections_g += rep.omega_g[b] > 1.0 + kRejectionMargin;
        rep.rejections_h += rep.omega_h[b] > 1.0 + kRejectionMargin;
    }
    return rep;
}

std::size_t binomial(std::size_t m, std::size_t k) {
    if (k > m) return 0;
    k = std::min(k, m - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::size_t num = m - k + i;
        // r * num / i stays integral; guard the multiplication.
        if (r > std::numeric_limits<std::size_t>::max() / num) return std::numeric_limits<std::size_t>::max();
        r = r * num / i;
    }
    return r;
}

namespace {

bool has_zero_row(const TradeStatistics& ts, const std::vector<std::size_t>& goods) {
    for (std::size_t t = 0; t < ts.periods(); ++t) {
        bool any = false;
        for (std::size_t i : goods) any = any || ts.quantity(t)[i] > 0.0;
        if (!any) return true;
    }
    return false;
}

std::vector<std::size_t> random_subset(std::size_t m, std::size_t k, Rng& rng) {
    std::vector<std::size_t> pool(m);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, m - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

constexpr std::size_t kMaxResamples = 1000;

}  // namespace

GroupProbabilityCurve random_group_probability(const TradeStatistics& ts, const std::vector<std::size_t>& sizes,
                                                std::size_t samples, std::uint64_t seed, std::size_t workers) {
    const std::size_t m = ts.goods();
    GroupProbabilityCurve curve;
    curve.seed = seed;
    for (std::size_t k : sizes) {
        if (k < 2 || k > m) throw InputError("group size must lie in [2, " + std::to_string(m) + "]");
        const std::size_t total = binomial(m, k);
        const bool exhaustive = total <= samples;

        std::vector<std::vector<std::size_t>> groups;
        std::vector<std::size_t> rejected;
        if (exhaustive) {
            std::vector<bool> mask(m, false);
            std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
            std::size_t skipped = 0;
            do {
                std::vector<std::size_t> g;
                for (std::size_t i = 0; i < m; ++i)
                    if (mask[i]) g.push_back(i);
                if (has_zero_row(ts, g)) ++skipped;
                else groups.push_back(std::move(g));
            } while (std::prev_permutation(mask.begin(), mask.end()));
            rejected.push_back(skipped);
        } else {
            groups.resize(samples);
            rejected.assign(samples, 0);
            parallel_for(samples, workers, [&](std::size_t j) {
                for (std::size_t attempt = 0;; ++attempt) {
                    if (attempt == kMaxResamples)
                        throw InputError("no group of size " + std::to_string(k) + " without an all-zero quantity row");
                    Rng rng = substream(seed, {k, j, attempt});
                    auto g = random_subset(m, k, rng);
                    if (!has_zero_row(ts, g)) {
                        groups[j] = std::move(g);
                        rejected[j] = attempt;
                        return;
                    }
                }
            });
        }

        std::vector<unsigned char> garp(groups.size(), 0), harp(groups.size(), 0);
        parallel_for(groups.size(), workers, [&](std::size_t j) {
            const TradeStatistics sub = restrict_to_group(ts, GroupSelection(groups[j]));
            const CrossValueMatrix px = cross_value_matrix(sub);
            garp[j] = check_garp(px, 1.0).satisfied;
            harp[j] = check_harp(paasche_matrix(px), 1.0).satisfied;
        });
        const std::size_t n = groups.size();
        const auto hits_g = std::accumulate(garp.begin(), garp.end(), std::size_t{0});
        const auto hits_h = std::accumulate(harp.begin(), harp.end(), std::size_t{0});
        curve.sizes.push_back(k);
        curve.groups.push_back(n);
        curve.exhaustive.push_back(exhaustive);
        curve.resampled.push_back(std::accumulate(rejected.begin(), rejected.end(), std::size_t{0}));
        curve.p_garp.push_back(n ? static_cast<double>(hits_g) / static_cast<double>(n) : 0.0);
        curve.p_harp.push_back(n ? static_cast<double>(hits_h) / static_cast<double>(n) : 0.0);
    }
    return curve;
}

}  // namespace konus
