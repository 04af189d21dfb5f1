#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "konus/axioms.hpp"
#include "konus/core.hpp"
#include "konus/random.hpp"
#include "konus/semiring.hpp"

namespace konus {

/// The homothetic forecasting cone for a new price vector:
/// X belongs to it iff gamma[s] <P^s, X> >= <P_new, X> for every period s.
struct ForecastCone {
    double omega = 1.0;
    std::vector<double> price_new;
    std::vector<double> gamma;
};

/// Max-times closure of C / omega with every entry kept, diagonal included, so
/// a path with k intermediate periods weighs omega^(-k-1) times its product.
ClosureMatrix omega_closure(const PaascheMatrix& c, double omega);

/// gamma[s] = min_t omega^2 / Cw*(t, s) * <P_new, X^t> / px(t, t), with Cw* the
/// omega closure. Throws HarpViolation if HARP(omega) fails.
ForecastCone gamma_coefficients(const TradeStatistics& ts, double omega, std::span<const double> price_new);

/// All cone inequalities hold, each up to a relative slack `tolerance`.
bool kh_membership(const ForecastCone& cone, const TradeStatistics& ts, std::span<const double> x,
                   double tolerance = 0.0);

/// GARP(omega) of the statistics extended by (P_new, X).
bool kg_membership(const TradeStatistics& ts, double omega, std::span<const double> price_new,
                   std::span<const double> x, double tolerance = 0.0);

enum class Sense { GreaterEqual, Equal };

/// sum_i coeffs[i] X_i (sense) rhs
struct LinearConstraint {
    std::string label;
    std::vector<double> coeffs;
    Sense sense = Sense::GreaterEqual;
    double rhs = 0.0;
};

struct Polytope {
    std::vector<LinearConstraint> constraints;
    std::vector<std::vector<double>> vertices;  // filled when the dimension allows
    bool vertices_enumerated = false;
};

/// Cone inequalities, the expenditure plane <P_new, X> = x_new and X >= 0.
/// Vertices are enumerated when the number of goods is at most `max_vertex_dim`.
Polytope kh_polytope(const ForecastCone& cone, const TradeStatistics& ts, double x_new,
                     std::size_t max_vertex_dim = 4);

/// Whether x satisfies every constraint, each up to `tol` times the larger
/// side's magnitude.
bool satisfies(const std::vector<LinearConstraint>& constraints, std::span<const double> x, double tol = 1e-12);

/// Vertices of {X : constraints} by testing every basis of active
/// constraints; duplicates within `tol` are merged, order is lexicographic.
std::vector<std::vector<double>> enumerate_vertices(const std::vector<LinearConstraint>& constraints,
                                                    std::size_t dim, double tol = 1e-9);

/// 1 for x > 0, else 0.
inline double unit_step(double x) { return x > 0.0 ? 1.0 : 0.0; }

struct LawOfDemandEstimate {
    double omega = 1.0;
    Matrix<double> d;      // D(s, t)
    Matrix<double> delta;  // path maxima of D; +inf when a cycle exceeds 1
    bool diverged = false;
};

/// D(s, t) = max{px(t, t) / (omega px(s, t)), step(px(s, s) / px(s, t) - omega)}
/// for s != t. Delta(s, t) is the largest product of D over paths s -> ... -> t
/// through other periods; the one-edge path counts unless `include_direct` is
/// false.
LawOfDemandEstimate law_of_demand_matrices(const CrossValueMatrix& px, double omega, bool include_direct = true);

/// Necessary condition for X to extend the statistics under HARP(omega) and
/// the law of demand: for all periods s, t,
/// D(s, new) * D(new, t) * Delta(t, s) <= 1, with Delta(s, s) read as at
/// least 1. Throws HarpViolation if the statistics fail HARP(omega).
bool law_of_demand_outer(const TradeStatistics& ts, double omega, std::span<const double> price_new,
                         std::span<const double> x, bool include_direct = true);

/// |Z| / ||Z||_2 for m independent standard normals Z.
std::vector<double> sample_positive_sphere(std::size_t m, Rng& rng);

struct SizeReport {
    std::string axiom;  // "GARP" or "HARP"
    std::size_t trials = 0;
    std::size_t hits = 0;
    double f_hat() const { return trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0; }
};

struct PairedSize {
    SizeReport garp;
    SizeReport harp;
    std::uint64_t seed = 0;
};

/// Replaces the last period's prices by a random unit vector B times and
/// counts how often GARP(1) and HARP(1) hold. Both axioms see the same draws.
/// Trial b uses substream(seed, {b}); the result is independent of `workers`.
PairedSize forecast_size(const TradeStatistics& ts, std::size_t trials, std::uint64_t seed, std::size_t workers = 1);

}  // namespace konus
