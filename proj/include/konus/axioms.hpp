#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "konus/core.hpp"
#include "konus/semiring.hpp"

namespace konus {

/// Revealed-preference chain t -> t_1 -> ... -> s whose links satisfy
/// px(a, a) >= omega * px(a, b), closed by the failed comparison
/// px(s, s) > omega * px(s, t).
struct GarpWitness {
    std::vector<std::size_t> chain;
    std::size_t violator() const { return chain.back(); }  // s
    std::size_t origin() const { return chain.front(); }   // t
};

/// Cycle (t_1, ..., t_k), k >= 2, cyclically adjacent indices distinct, whose
/// Paasche product exceeds omega^k.
struct HarpWitness {
    std::vector<std::size_t> cycle;
    double product = 0.0;
};

using Witness = std::variant<std::monostate, GarpWitness, HarpWitness>;

struct AxiomVerdict {
    bool satisfied = true;
    double omega = 1.0;
    Witness witness;
};

/// Thrown by certificate solvers when the axiom they rely on fails.
class GarpViolation : public std::runtime_error {
public:
    explicit GarpViolation(GarpWitness w)
        : std::runtime_error("statistics violate GARP(omega)"), witness(std::move(w)) {}
    GarpWitness witness;
};

class HarpViolation : public std::runtime_error {
public:
    explicit HarpViolation(HarpWitness w)
        : std::runtime_error("statistics violate HARP(omega)"), witness(std::move(w)) {}
    HarpWitness witness;
};

/// Expenditure ratios G(t, s) = px(t, t) / px(t, s). The GARP(omega) relation
/// is t -> s iff G(t, s) >= omega (t != s); these ratios are also the only
/// values of omega at which the verdict can change.
Matrix<double> expenditure_ratios(const CrossValueMatrix& px);

/// Direct relation R(omega) without self-loops; tolerance loosens the link test.
BooleanRelation revealed_preference(const CrossValueMatrix& px, double omega, double tolerance = 0.0);

/// GARP(omega). Comparisons are non-strict; `tolerance` is an additive slack on
/// the dimensionless ratios (links use omega - tol, violations omega + tol).
AxiomVerdict check_garp(const TradeStatistics& ts, double omega = 1.0, double tolerance = 0.0);
AxiomVerdict check_garp(const CrossValueMatrix& px, double omega = 1.0, double tolerance = 0.0);

/// HARP(omega): every admissible cycle product of C stays below omega^k,
/// decided by the max-times closure of C / omega over off-diagonal edges.
AxiomVerdict check_harp(const TradeStatistics& ts, double omega = 1.0, double tolerance = 0.0);
AxiomVerdict check_harp(const PaascheMatrix& c, double omega = 1.0, double tolerance = 0.0);

/// Which index sequences count as HARP cycles. CyclicAdjacency requires k >= 2
/// and t_k != t_1 as well as t_i != t_(i+1). Literal only requires the latter,
/// so the one-period cycle (t) with product 1 is admitted and every omega < 1
/// fails.
enum class CycleReading { CyclicAdjacency, Literal };

/// Exhaustive HARP(omega) oracle over cycles of length up to max_len. Throws
/// OracleTooLarge if more than `budget` index sequences would be visited.
AxiomVerdict brute_force_harp(const TradeStatistics& ts, double omega, std::size_t max_len,
                              double tolerance = 0.0, std::size_t budget = 20'000'000,
                              CycleReading reading = CycleReading::CyclicAdjacency);

/// Human-readable witness description using period labels.
std::string describe(const Witness& w, const TradeStatistics& ts, double omega);

}  // namespace konus
