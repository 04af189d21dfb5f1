#include "konus/afriat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace konus {

namespace {

constexpr double kCertificateSlack = 1e-9;

}  // namespace

double harp_system_violation(const HarpMultipliers& lm, const CrossValueMatrix& px) {
    const std::size_t T = px.size();
    double worst = 0.0;
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t s = 0; s < T; ++s) {
            if (t == s) continue;
            const double lhs = lm.omega * lm.lambda[t] * px(t, s);
            const double rhs = lm.lambda[s] * px(s, s);
            worst = std::max(worst, (rhs - lhs) / std::max(lhs, rhs));
        }
    return worst;
}

double afriat_system_violation(const AfriatSolution& sol, const CrossValueMatrix& px) {
    const std::size_t T = px.size();
    double worst = 0.0;
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t s = 0; s < T; ++s) {
            if (t == s) continue;
            const double step = sol.lambda[s] * (sol.omega * px(s, t) - px(s, s));
            const double rhs = sol.utility[s] + step;
            const double scale = std::max({1.0, std::abs(sol.utility[t]), std::abs(sol.utility[s]),
                                           sol.lambda[s] * sol.omega * px(s, t), sol.lambda[s] * px(s, s)});
            worst = std::max(worst, (sol.utility[t] - rhs) / scale);
        }
    return worst;
}

HarpMultipliers solve_harp_multipliers(const TradeStatistics& ts, double omega, double tolerance) {
    if (ts.goods() == 1 && omega >= 1.0 - tolerance) {
        // Linear utility: lambda^t = P^1 / P^t.
        HarpMultipliers lm{omega, std::vector<double>(ts.periods(), 1.0)};
        for (std::size_t t = 1; t < ts.periods(); ++t) lm.lambda[t] = ts.price(0)[0] / ts.price(t)[0];
        if (harp_system_violation(lm, cross_value_matrix(ts)) > kCertificateSlack + tolerance)
            throw std::logic_error("solve_harp_multipliers: certificate failed verification");
        return lm;
    }
    const PaascheMatrix c = paasche_matrix(ts);
    const std::size_t T = c.size();
    Matrix<double> a(T, T, 0.0);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t s = 0; s < T; ++s)
            if (t != s) a(t, s) = c(t, s) / omega;
    const ClosureMatrix closure = maxtimes_closure(a, tolerance);
    if (closure.diverged) {
        AxiomVerdict v = check_harp(c, omega, tolerance);
        throw HarpViolation(std::get<HarpWitness>(v.witness));
    }

    HarpMultipliers lm{omega, std::vector<double>(T, 1.0)};
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t s = 0; s < T; ++s) lm.lambda[t] = std::max(lm.lambda[t], closure(t, s));
    const double base = lm.lambda[0];
    for (double& l : lm.lambda) l /= base;
    lm.lambda[0] = 1.0;

    if (harp_system_violation(lm, cross_value_matrix(ts)) > kCertificateSlack + tolerance)
        throw std::logic_error("solve_harp_multipliers: certificate failed verification");
    return lm;
}

AfriatSolution solve_afriat_numbers(const TradeStatistics& ts, double omega, double tolerance) {
    if (!(omega > 0.0)) throw InputError("omega must be positive");
    const CrossValueMatrix px = cross_value_matrix(ts);
    {
        AxiomVerdict v = check_garp(px, omega, tolerance);
        if (!v.satisfied) throw GarpViolation(std::get<GarpWitness>(v.witness));
    }
    const std::size_t T = px.size();
    const BooleanRelation r = revealed_preference(px, omega, tolerance);
    const BooleanRelation rstar = boolean_closure(r);

    AfriatSolution sol{omega, std::vector<double>(T, 0.0), std::vector<double>(T, 0.0)};
    std::vector<unsigned char> remaining(T, 1);  // I
    std::vector<std::size_t> assigned;           // B
    std::size_t left = T;

    while (left > 0) {
        // Maximal element of I: nothing in I reaches it without being reached back.
        std::size_t m = T;
        for (std::size_t cand = 0; cand < T && m == T; ++cand) {
            if (!remaining[cand]) continue;
            bool maximal = true;
            for (std::size_t t = 0; t < T && maximal; ++t)
                if (remaining[t] && t != cand && rstar(t, cand) && !rstar(cand, t)) maximal = false;
            if (maximal) m = cand;
        }
        if (m == T) throw std::logic_error("solve_afriat_numbers: no maximal element");

        std::vector<std::size_t> cls;  // E, always containing m
        for (std::size_t t = 0; t < T; ++t)
            if (remaining[t] && (t == m || rstar(t, m))) cls.push_back(t);

        double u = 1.0;
        double lambda = 1.0;
        if (!assigned.empty()) {
            u = std::numeric_limits<double>::infinity();
            for (std::size_t t : cls)
                for (std::size_t tau : assigned) {
                    const double bound =
                        sol.utility[tau] + sol.lambda[tau] * (omega * px(tau, t) - px(tau, tau));
                    u = std::min({u, bound, sol.utility[tau]});
                }
            lambda = 1.0;
            for (std::size_t t : cls)
                for (std::size_t tau : assigned) {
                    const double denom = omega * px(t, tau) - px(t, t);
                    if (denom > 0.0) lambda = std::max(lambda, (sol.utility[tau] - u) / denom);
                }
        }
        for (std::size_t t : cls) {
            sol.utility[t] = u;
            sol.lambda[t] = lambda;
            remaining[t] = 0;
            assigned.push_back(t);
            --left;
        }
    }

    if (afriat_system_violation(sol, px) > kCertificateSlack + tolerance)
        throw std::logic_error("solve_afriat_numbers: certificate failed verification");
    return sol;
}

double eval_harp_utility(const HarpMultipliers& lm, const TradeStatistics& ts, std::span<const double> x) {
    if (x.size() != ts.goods()) throw InputError("eval_harp_utility: wrong dimension");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < ts.periods(); ++s) best = std::min(best, lm.lambda[s] * dot(ts.price(s), x));
    return best;
}

double eval_garp_utility(const AfriatSolution& sol, const TradeStatistics& ts, std::span<const double> x) {
    if (x.size() != ts.goods()) throw InputError("eval_garp_utility: wrong dimension");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < ts.periods(); ++s)
        best = std::min(best, sol.utility[s] + sol.lambda[s] * (dot(ts.price(s), x) - ts.expenditure(s)));
    return best;
}

IndexSeries konus_divisia_series(const TradeStatistics& ts, const HarpMultipliers& lm) {
    const std::size_t T = ts.periods();
    if (lm.lambda.size() != T) throw InputError("konus_divisia_series: multiplier count mismatch");
    IndexSeries out{std::vector<double>(T), std::vector<double>(T)};
    for (std::size_t t = 0; t < T; ++t) {
        out.consumption[t] = lm.lambda[t] * ts.expenditure(t);
        out.price[t] = 1.0 / lm.lambda[t];
    }
    return out;
}

}  // namespace konus
