#include "konus/fixture.hpp"

#include <cmath>

#include "konus/random.hpp"

namespace konus {

CounterexampleFixture::CounterexampleFixture(double eps) : epsilon(eps) {
    if (!(eps >= 0.0) || !(eps < 1.0)) throw InputError("epsilon must lie in [0, 1)");
}

std::vector<double> CounterexampleFixture::direction(std::size_t t) const {
    std::vector<double> d(3, epsilon);
    d.at(t) = 1.0;
    return d;
}

TradeStatistics CounterexampleFixture::statistics() const {
    Matrix<double> x(3, 3);
    for (std::size_t t = 0; t < 3; ++t) {
        const auto d = direction(t);
        std::copy(d.begin(), d.end(), x.row(t).begin());
    }
    return TradeStatistics(prices, std::move(x));
}

std::vector<double> intersection_demands(const CounterexampleFixture& fix) {
    std::vector<double> out;
    for (std::size_t t = 0; t < 3; ++t) {
        const double unit = dot(fix.price_new, fix.direction(t));
        if (!(unit > 0.0)) throw InputError("Engel curve never reaches the new budget plane");
        out.push_back(fix.x_new / unit);
    }
    return out;
}

TradeStatistics intersection_statistics(const CounterexampleFixture& fix) {
    const auto xs = intersection_demands(fix);
    Matrix<double> x(3, 3);
    for (std::size_t t = 0; t < 3; ++t) {
        const auto d = fix.direction(t);
        for (std::size_t i = 0; i < 3; ++i) x(t, i) = xs[t] * d[i];
    }
    return TradeStatistics(fix.prices, std::move(x));
}

Polytope support_polytope(const CounterexampleFixture& fix) {
    const TradeStatistics crossing = intersection_statistics(fix);
    Polytope poly;
    for (std::size_t t = 0; t < 3; ++t) {
        const auto p = crossing.price(t);
        poly.constraints.push_back({"support " + crossing.period_ids()[t], std::vector<double>(p.begin(), p.end()),
                                    Sense::GreaterEqual, crossing.expenditure(t)});
    }
    poly.constraints.push_back({"budget", fix.price_new, Sense::Equal, fix.x_new});
    for (std::size_t i = 0; i < 3; ++i) {
        LinearConstraint c{"nonneg " + crossing.good_ids()[i], std::vector<double>(3, 0.0), Sense::GreaterEqual, 0.0};
        c.coeffs[i] = 1.0;
        poly.constraints.push_back(std::move(c));
    }
    poly.vertices = enumerate_vertices(poly.constraints, 3);
    poly.vertices_enumerated = true;
    return poly;
}

namespace {

bool on_support_face(const Polytope& g, const std::vector<double>& x) {
    for (const auto& c : g.constraints) {
        if (c.label.rfind("support", 0) != 0) continue;
        if (std::abs(dot(c.coeffs, x) - c.rhs) <= 1e-12 * c.rhs) return true;
    }
    return false;
}

}  // namespace

InclusionCheck check_inclusion(const CounterexampleFixture& fix, std::size_t resolution) {
    const TradeStatistics base = fix.statistics();
    const TradeStatistics crossing = intersection_statistics(fix);
    const ForecastCone cone = gamma_coefficients(base, 1.0, fix.price_new);

    InclusionCheck out;
    out.kh = kh_polytope(cone, base, fix.x_new);
    out.g = support_polytope(fix);
    for (const auto& v : out.kh.vertices)
        out.vertices_in_g = out.vertices_in_g && kg_membership(crossing, 1.0, fix.price_new, v);

    const double n = static_cast<double>(resolution);
    for (std::size_t a = 0; a <= resolution; ++a)
        for (std::size_t b = 0; a + b <= resolution; ++b) {
            const std::size_t c = resolution - a - b;
            const std::vector<double> x{fix.x_new * static_cast<double>(a) / n / fix.price_new[0],
                                        fix.x_new * static_cast<double>(b) / n / fix.price_new[1],
                                        fix.x_new * static_cast<double>(c) / n / fix.price_new[2]};
            ++out.grid_points;
            const bool kh = kh_membership(cone, base, x);
            const bool g = kg_membership(crossing, 1.0, fix.price_new, x);
            out.in_kh += kh;
            out.in_g += g;
            if (g != satisfies(out.g.constraints, x) && !on_support_face(out.g, x)) ++out.g_mismatch;
            if (kh && !g) ++out.kh_outside_g;
            if (g && !kh) {
                if (out.g_outside_kh == 0) out.witness = x;
                ++out.g_outside_kh;
            }
        }
    return out;
}

TradeStatistics synthetic_statistics(const SyntheticSpec& spec) {
    const std::size_t T = spec.periods, m = spec.goods;
    if (T == 0 || m == 0) throw InputError("synthetic statistics need at least one period and one good");
    Rng rng = substream(spec.seed, {static_cast<std::uint64_t>(spec.kind), T, m});
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.5, 1.5);

    Matrix<double> p(T, m), x(T, m);
    std::vector<double> logp(m);
    for (double& v : logp) v = 0.3 * normal(rng);
    std::vector<double> weight(m);
    for (double& w : weight) w = uniform(rng);

    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t i = 0; i < m; ++i) {
            if (t > 0) logp[i] += spec.price_drift * normal(rng);
            p(t, i) = std::exp(logp[i]);
        }
        if (spec.kind == SyntheticKind::Random) {
            for (std::size_t i = 0; i < m; ++i) x(t, i) = std::exp(0.5 * normal(rng));
            continue;
        }
        // CES demand: x_i = income * w_i^s p_i^-s / sum_j w_j^s p_j^(1-s).
        const double s = spec.elasticity;
        const double income = 100.0 * uniform(rng);
        double denom = 0.0;
        for (std::size_t j = 0; j < m; ++j) denom += std::pow(weight[j], s) * std::pow(p(t, j), 1.0 - s);
        for (std::size_t i = 0; i < m; ++i) x(t, i) = income * std::pow(weight[i], s) * std::pow(p(t, i), -s) / denom;
    }
    return TradeStatistics(std::move(p), std::move(x));
}

}  // namespace konus
