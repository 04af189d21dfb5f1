#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "konus/core.hpp"
#include "konus/forecast.hpp"

namespace konus {

/// Three goods with ray Engel curves q_t(x) = d_t x, d_t = e_t + eps (1 - e_t),
/// observed at unit expenditure under three fixed price vectors, plus a new
/// price vector and expenditure for forecasting.
struct CounterexampleFixture {
    double epsilon = 0.0;
    Matrix<double> prices = Matrix<double>::from_rows({{2, 1, 4}, {2, 1, 2}, {2, 2, 1}});
    std::vector<double> price_new{1, 1, 1};
    double x_new = 2.0;

    explicit CounterexampleFixture(double eps = 0.0);

    std::vector<double> direction(std::size_t t) const;
    /// Observations (P^t, q_t(1)).
    TradeStatistics statistics() const;
};

/// Expenditures x_t with <P_new, q_t(x_t)> = x_new. Throws InputError when a
/// direction is orthogonal to P_new.
std::vector<double> intersection_demands(const CounterexampleFixture& fix);

/// Observations (P^t, q_t(x_t)) at the intersection demands.
TradeStatistics intersection_statistics(const CounterexampleFixture& fix);

/// GARP support set of the intersection demands on the new budget plane:
/// <P^t, X> >= <P^t, q_t(x_t)> for every t, <P_new, X> = x_new, X >= 0.
/// This is the closure of the GARP set: points on a support face can still
/// close a revealed cycle through the weak link they create.
Polytope support_polytope(const CounterexampleFixture& fix);

struct InclusionCheck {
    Polytope kh;                     // cone on the budget plane
    Polytope g;                      // support_polytope
    std::size_t g_mismatch = 0;      // grid points off the support faces where g and kg_membership disagree
    std::size_t grid_points = 0;     // points of the budget simplex tested
    std::size_t in_kh = 0;
    std::size_t in_g = 0;
    std::size_t kh_outside_g = 0;    // must be 0 for inclusion
    std::size_t g_outside_kh = 0;    // > 0 for strict inclusion
    std::vector<double> witness;     // a point in G but not in K_H, if any
    bool vertices_in_g = true;       // every K_H vertex lies in G
    bool strict() const { return kh_outside_g == 0 && vertices_in_g && g_outside_kh > 0; }
};

/// Compares the homothetic forecast set with the GARP support set built from
/// the intersection demands on a regular grid of the budget simplex with
/// `resolution` steps per axis. Demands on the simplex are x_new (a, b, c) / N
/// scaled coordinatewise by 1 / P_new.
InclusionCheck check_inclusion(const CounterexampleFixture& fix, std::size_t resolution = 64);

enum class SyntheticKind { Random, Ces };

struct SyntheticSpec {
    std::size_t periods = 10;
    std::size_t goods = 10;
    SyntheticKind kind = SyntheticKind::Ces;
    double elasticity = 0.7;   // CES substitution elasticity
    double price_drift = 0.05; // sd of log price steps
    std::uint64_t seed = 1;
};

/// Random: lognormal prices and quantities, unrelated. Ces: quantities are
/// exact CES demands under random-walk prices and random incomes, so the
/// statistics satisfies HARP(1) up to rounding.
TradeStatistics synthetic_statistics(const SyntheticSpec& spec);

}  // namespace konus
