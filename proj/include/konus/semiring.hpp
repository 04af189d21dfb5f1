#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "konus/matrix.hpp"

namespace konus {

/// Max-times closure of a nonnegative square matrix.
///
/// When not diverged, values(t, s) is the maximum edge-weight product over all
/// paths t -> ... -> s with at least one edge. Once some cycle product exceeds
/// 1 the closure is unbounded: `diverged` is set and every value is +inf.
struct ClosureMatrix {
    Matrix<double> values;
    bool diverged = false;

    double operator()(std::size_t t, std::size_t s) const { return values(t, s); }
    std::size_t size() const noexcept { return values.rows(); }
};

/// Square boolean relation.
struct BooleanRelation {
    Matrix<unsigned char> rel;

    BooleanRelation() = default;
    explicit BooleanRelation(std::size_t n) : rel(n, n, 0) {}

    bool operator()(std::size_t a, std::size_t b) const { return rel(a, b) != 0; }
    void set(std::size_t a, std::size_t b, bool v = true) { rel(a, b) = v ? 1 : 0; }
    std::size_t size() const noexcept { return rel.rows(); }
    bool operator==(const BooleanRelation&) const = default;
};

/// Floyd-Warshall closure in the (max, x) semiring. A diagonal entry above
/// 1 + tolerance after any pivot stops the iteration and marks divergence.
/// Throws std::invalid_argument on negative or non-square input.
ClosureMatrix maxtimes_closure(const Matrix<double>& m, double tolerance = 0.0);

/// Warshall transitive closure; reflexivity is not forced.
BooleanRelation boolean_closure(const BooleanRelation& r);

/// A cycle (t_1, ..., t_k) and the geometric mean of its edge products.
struct CycleMean {
    double value = 0.0;
    std::vector<std::size_t> cycle;
};

/// Maximum geometric-mean cycle of a positive square matrix.
///
/// With min_len >= 2 self-loops are not edges, so only cycles whose cyclically
/// adjacent indices differ are admissible; repeating a 2-cycle makes every
/// min_len >= 2 give the same supremum. min_len == 1 also admits self-loops.
/// Karp's maximum-mean-cycle recursion in log space, O(T^3). Returns nullopt
/// when there is no admissible cycle (T < 2 without self-loops).
std::optional<CycleMean> max_cycle_geomean(const Matrix<double>& m, std::size_t min_len = 2);

}  // namespace konus
