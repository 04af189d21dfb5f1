#include "konus/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "konus/parallel.hpp"

namespace konus {

namespace {

void require_positive_prices(std::span<const double> p, std::size_t m) {
    if (p.size() != m) throw InputError("new price vector has wrong dimension");
    for (double v : p)
        if (!(v > 0.0) || !std::isfinite(v)) throw InputError("new prices must be positive and finite");
}

void require_demand(std::span<const double> x, std::size_t m) {
    if (x.size() != m) throw InputError("demand vector has wrong dimension");
    bool positive = false;
    for (double v : x) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("demand must be nonnegative and finite");
        positive = positive || v > 0.0;
    }
    if (!positive) throw InputError("demand must have a positive coordinate");
}

}  // namespace

ClosureMatrix omega_closure(const PaascheMatrix& c, double omega) {
    if (!(omega > 0.0)) throw InputError("omega must be positive");
    const std::size_t T = c.size();
    Matrix<double> a(T, T);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t s = 0; s < T; ++s) a(t, s) = c(t, s) / omega;
    return maxtimes_closure(a);
}

ForecastCone gamma_coefficients(const TradeStatistics& ts, double omega, std::span<const double> price_new) {
    require_positive_prices(price_new, ts.goods());
    const PaascheMatrix c = paasche_matrix(ts);
    {
        AxiomVerdict v = check_harp(c, omega);
        if (!v.satisfied) throw HarpViolation(std::get<HarpWitness>(v.witness));
    }
    const ClosureMatrix cstar = omega_closure(c, omega);
    const std::size_t T = ts.periods();
    ForecastCone cone{omega, {price_new.begin(), price_new.end()},
                      std::vector<double>(T, std::numeric_limits<double>::infinity())};
    for (std::size_t t = 0; t < T; ++t) {
        const double ratio = dot(price_new, ts.quantity(t)) / ts.expenditure(t);
        for (std::size_t s = 0; s < T; ++s)
            cone.gamma[s] = std::min(cone.gamma[s], omega * omega / cstar(t, s) * ratio);
    }
    return cone;
}

bool kh_membership(const ForecastCone& cone, const TradeStatistics& ts, std::span<const double> x, double tolerance) {
    if (x.size() != ts.goods()) throw InputError("demand vector has wrong dimension");
    const double rhs = dot(cone.price_new, x);
    for (std::size_t s = 0; s < ts.periods(); ++s)
        if (cone.gamma[s] * dot(ts.price(s), x) < rhs * (1.0 - tolerance)) return false;
    return true;
}

bool kg_membership(const TradeStatistics& ts, double omega, std::span<const double> price_new,
                   std::span<const double> x, double tolerance) {
    require_positive_prices(price_new, ts.goods());
    require_demand(x, ts.goods());
    return check_garp(append_observation(ts, price_new, x), omega, tolerance).satisfied;
}

std::vector<std::vector<double>> enumerate_vertices(const std::vector<LinearConstraint>& constraints,
                                                    std::size_t dim, double tol) {
    std::vector<std::size_t> equalities, inequalities;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        if (constraints[i].coeffs.size() != dim) throw InputError("constraint has wrong dimension");
        (constraints[i].sense == Sense::Equal ? equalities : inequalities).push_back(i);
    }
    std::vector<std::vector<double>> out;
    if (equalities.size() > dim) return out;
    const std::size_t pick = dim - equalities.size();
    if (pick > inequalities.size()) return out;

    auto feasible = [&](const Eigen::VectorXd& x) {
        for (const auto& c : constraints) {
            double lhs = 0.0, scale = std::abs(c.rhs);
            for (std::size_t j = 0; j < dim; ++j) {
                lhs += c.coeffs[j] * x[static_cast<Eigen::Index>(j)];
                scale = std::max(scale, std::abs(c.coeffs[j] * x[static_cast<Eigen::Index>(j)]));
            }
            const double slack = tol * std::max(1.0, scale);
            if (c.sense == Sense::Equal ? std::abs(lhs - c.rhs) > slack : lhs < c.rhs - slack) return false;
        }
        return true;
    };

    std::vector<bool> mask(inequalities.size(), false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(pick), true);
    const auto n = static_cast<Eigen::Index>(dim);
    do {
        Eigen::MatrixXd a(n, n);
        Eigen::VectorXd b(n);
        Eigen::Index row = 0;
        auto put = [&](const LinearConstraint& c) {
            for (std::size_t j = 0; j < dim; ++j) a(row, static_cast<Eigen::Index>(j)) = c.coeffs[j];
            b[row++] = c.rhs;
        };
        for (std::size_t i : equalities) put(constraints[i]);
        for (std::size_t k = 0; k < inequalities.size(); ++k)
            if (mask[k]) put(constraints[inequalities[k]]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        if (lu.rank() < n) continue;
        const Eigen::VectorXd x = lu.solve(b);
        if (!feasible(x)) continue;
        std::vector<double> v(x.data(), x.data() + n);
        for (double& e : v)
            if (std::abs(e) < tol) e = 0.0;
        const bool dup = std::any_of(out.begin(), out.end(), [&](const std::vector<double>& w) {
            for (std::size_t j = 0; j < dim; ++j)
                if (std::abs(w[j] - v[j]) > tol * std::max(1.0, std::abs(v[j]))) return false;
            return true;
        });
        if (!dup) out.push_back(std::move(v));
    } while (std::prev_permutation(mask.begin(), mask.end()));
    std::sort(out.begin(), out.end());
    return out;
}

bool satisfies(const std::vector<LinearConstraint>& constraints, std::span<const double> x, double tol) {
    for (const auto& c : constraints) {
        if (c.coeffs.size() != x.size()) throw InputError("satisfies: dimension mismatch");
        double lhs = 0.0, scale = std::abs(c.rhs);
        for (std::size_t i = 0; i < x.size(); ++i) {
            lhs += c.coeffs[i] * x[i];
            scale = std::max(scale, std::abs(c.coeffs[i] * x[i]));
        }
        const double slack = tol * std::max(scale, 1.0);
        if (c.sense == Sense::Equal ? std::abs(lhs - c.rhs) > slack : lhs < c.rhs - slack) return false;
    }
    return true;
}

Polytope kh_polytope(const ForecastCone& cone, const TradeStatistics& ts, double x_new, std::size_t max_vertex_dim) {
    if (!(x_new > 0.0)) throw InputError("expenditure must be positive");
    const std::size_t m = ts.goods();
    Polytope poly;
    for (std::size_t s = 0; s < ts.periods(); ++s) {
        LinearConstraint c{"cone " + ts.period_ids()[s], std::vector<double>(m), Sense::GreaterEqual, 0.0};
        for (std::size_t i = 0; i < m; ++i) c.coeffs[i] = cone.gamma[s] * ts.price(s)[i] - cone.price_new[i];
        poly.constraints.push_back(std::move(c));
    }
    poly.constraints.push_back({"budget", cone.price_new, Sense::Equal, x_new});
    for (std::size_t i = 0; i < m; ++i) {
        LinearConstraint c{"nonneg " + ts.good_ids()[i], std::vector<double>(m, 0.0), Sense::GreaterEqual, 0.0};
        c.coeffs[i] = 1.0;
        poly.constraints.push_back(std::move(c));
    }
    if (m <= max_vertex_dim) {
        poly.vertices = enumerate_vertices(poly.constraints, m);
        poly.vertices_enumerated = true;
    }
    return poly;
}

LawOfDemandEstimate law_of_demand_matrices(const CrossValueMatrix& px, double omega, bool include_direct) {
    if (!(omega > 0.0)) throw InputError("omega must be positive");
    const std::size_t T = px.size();
    LawOfDemandEstimate est{omega, Matrix<double>(T, T, 0.0), Matrix<double>(T, T, 0.0), false};
    for (std::size_t s = 0; s < T; ++s)
        for (std::size_t t = 0; t < T; ++t)
            if (s != t)
                est.d(s, t) = std::max(px(t, t) / (omega * px(s, t)), unit_step(px(s, s) / px(s, t) - omega));
    const ClosureMatrix closure = maxtimes_closure(est.d);
    est.diverged = closure.diverged;
    if (closure.diverged) {
        est.delta = closure.values;
    } else if (include_direct) {
        est.delta = closure.values;
    } else {
        for (std::size_t s = 0; s < T; ++s)
            for (std::size_t t = 0; t < T; ++t)
                for (std::size_t u = 0; u < T; ++u)
                    if (u != s) est.delta(s, t) = std::max(est.delta(s, t), est.d(s, u) * closure(u, t));
    }
    return est;
}

bool law_of_demand_outer(const TradeStatistics& ts, double omega, std::span<const double> price_new,
                         std::span<const double> x, bool include_direct) {
    require_positive_prices(price_new, ts.goods());
    require_demand(x, ts.goods());
    const CrossValueMatrix px = cross_value_matrix(ts);
    {
        AxiomVerdict v = check_harp(paasche_matrix(px), omega);
        if (!v.satisfied) throw HarpViolation(std::get<HarpWitness>(v.witness));
    }
    const LawOfDemandEstimate est = law_of_demand_matrices(px, omega, include_direct);
    if (est.diverged) return false;

    const std::size_t T = ts.periods();
    const double spend_new = dot(price_new, x);
    std::vector<double> to_new(T), from_new(T);
    for (std::size_t s = 0; s < T; ++s) {
        const double ps_x = dot(ts.price(s), x);
        to_new[s] = std::max(spend_new / (omega * ps_x), unit_step(px(s, s) / ps_x - omega));
        const double pn_xs = dot(price_new, ts.quantity(s));
        from_new[s] = std::max(px(s, s) / (omega * pn_xs), unit_step(spend_new / pn_xs - omega));
    }
    for (std::size_t s = 0; s < T; ++s)
        for (std::size_t t = 0; t < T; ++t) {
            const double back = s == t ? std::max(1.0, est.delta(t, s)) : est.delta(t, s);
            if (to_new[s] * from_new[t] * back > 1.0) return false;
        }
    return true;
}

std::vector<double> sample_positive_sphere(std::size_t m, Rng& rng) {
    if (m == 0) throw InputError("dimension must be positive");
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> p(m);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (double& v : p) {
            v = std::abs(normal(rng));
            norm2 += v * v;
        }
    } while (!(norm2 > 0.0));
    const double norm = std::sqrt(norm2);
    for (double& v : p) v /= norm;
    // Zero coordinates would leave the price domain; they occur with probability 0.
    for (double& v : p)
        if (v == 0.0) v = std::numeric_limits<double>::min();
    return p;
}

PairedSize forecast_size(const TradeStatistics& ts, std::size_t trials, std::uint64_t seed, std::size_t workers) {
    const std::size_t T = ts.periods(), m = ts.goods();
    std::vector<unsigned char> garp(trials, 0), harp(trials, 0);
    parallel_for(trials, workers, [&](std::size_t b) {
        Rng rng = substream(seed, {b});
        Matrix<double> prices = ts.prices();
        const std::vector<double> p = sample_positive_sphere(m, rng);
        std::copy(p.begin(), p.end(), prices.row(T - 1).begin());
        const TradeStatistics trial = with_prices(ts, std::move(prices));
        const CrossValueMatrix px = cross_value_matrix(trial);
        garp[b] = check_garp(px, 1.0).satisfied;
        harp[b] = check_harp(paasche_matrix(px), 1.0).satisfied;
    });
    PairedSize out{{"GARP", trials, 0}, {"HARP", trials, 0}, seed};
    for (std::size_t b = 0; b < trials; ++b) {
        out.garp.hits += garp[b];
        out.harp.hits += harp[b];
    }
    return out;
}

}  // namespace konus
