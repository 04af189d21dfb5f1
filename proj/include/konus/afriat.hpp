#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "konus/axioms.hpp"
#include "konus/core.hpp"

namespace konus {

/// Multipliers lambda^t > 0 with omega * lambda^t * px(t, s) >= lambda^s * px(s, s)
/// for all t != s. Normalized so lambda of the first period is 1.
struct HarpMultipliers {
    double omega = 1.0;
    std::vector<double> lambda;
};

/// Afriat numbers (U^t, lambda^t) with
/// U^t <= U^s + lambda^s (omega * px(s, t) - px(s, s)) for all t != s.
struct AfriatSolution {
    double omega = 1.0;
    std::vector<double> utility;
    std::vector<double> lambda;
};

/// Konus-Divisia consumption index F(X^t) = lambda^t px(t, t) and price index
/// Q(P^t) = 1 / lambda^t.
struct IndexSeries {
    std::vector<double> consumption;  // F
    std::vector<double> price;        // Q
};

/// Solves the homothetic Afriat system through the max-times closure A* of
/// A(t, s) = C(t, s) / omega (off-diagonal): lambda^t = max(1, max_s A*(t, s)).
/// Throws HarpViolation when HARP(omega) fails.
HarpMultipliers solve_harp_multipliers(const TradeStatistics& ts, double omega = 1.0, double tolerance = 0.0);

/// Constructive GARP(omega) solver: repeatedly takes a maximal element m of
/// the remaining periods under the closure of R(omega), assigns the class
/// {t : t R* m} the utility and multiplier bounds implied by the periods
/// already assigned, and moves it out. Lowest index wins ties.
/// Throws GarpViolation when GARP(omega) fails.
AfriatSolution solve_afriat_numbers(const TradeStatistics& ts, double omega = 1.0, double tolerance = 0.0);

/// Largest relative violation of the multiplier system (0 when feasible).
double harp_system_violation(const HarpMultipliers& lm, const CrossValueMatrix& px);

/// Largest relative violation of the Afriat system (0 when feasible).
double afriat_system_violation(const AfriatSolution& sol, const CrossValueMatrix& px);

/// F(X) = min_s lambda^s <P^s, X>. Positively homogeneous of degree 1.
double eval_harp_utility(const HarpMultipliers& lm, const TradeStatistics& ts, std::span<const double> x);

/// F_G(X) = min_s { U^s + lambda^s (<P^s, X> - px(s, s)) }.
/// Rationalizes the data only when sol.omega == 1; for other omega the value
/// is a diagnostic.
double eval_garp_utility(const AfriatSolution& sol, const TradeStatistics& ts, std::span<const double> x);

IndexSeries konus_divisia_series(const TradeStatistics& ts, const HarpMultipliers& lm);

}  // namespace konus
