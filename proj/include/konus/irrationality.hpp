#pragma once

#include "konus/axioms.hpp"
#include "konus/core.hpp"

namespace konus {

/// Infimum of {omega : GARP(omega) holds} and whether GARP holds at it.
struct GarpIndex {
    double value = 0.0;
    bool attained = false;
};

struct IrrationalityReport {
    double omega_g = 0.0;
    bool attained_g = false;
    double omega_h = 1.0;
    Witness garp_witness;  // GARP failure just below omega_g, if any
    Witness harp_witness;  // HARP failure cycle just below omega_h, if any
};

/// Largest geometric-mean Paasche cycle over cycles with distinct adjacent
/// periods. 1 for a single period.
double harp_irrationality(const TradeStatistics& ts);

/// Exact search over the breakpoints px(t, t) / px(t, s), t != s, and the
/// midpoints between consecutive ones. GARP(omega) is monotone in omega, so
/// the first passing test point locates the infimum. A single period gives
/// (0, false).
GarpIndex garp_irrationality(const TradeStatistics& ts);

/// Bisection estimate of the GARP index, accurate to about `tol`.
double garp_irrationality_bisection(const TradeStatistics& ts, double tol = 1e-12);

IrrationalityReport irrationality_report(const TradeStatistics& ts);

}  // namespace konus
