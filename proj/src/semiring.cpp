#include "konus/semiring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace konus {

ClosureMatrix maxtimes_closure(const Matrix<double>& m, double tolerance) {
    if (!m.square()) throw std::invalid_argument("maxtimes_closure: matrix must be square");
    const std::size_t n = m.rows();
    for (double v : m.data())
        if (!(v >= 0.0)) throw std::invalid_argument("maxtimes_closure: negative entry");

    ClosureMatrix out{m, false};
    Matrix<double>& w = out.values;
    const double limit = 1.0 + tolerance;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double wik = w(i, k);
            if (wik == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const double cand = wik * w(k, j);
                if (cand > w(i, j)) w(i, j) = cand;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (w(i, i) > limit) {
                out.diverged = true;
                break;
            }
        }
        if (out.diverged) break;
    }
    if (out.diverged) out.values = Matrix<double>(n, n, std::numeric_limits<double>::infinity());
    return out;
}

BooleanRelation boolean_closure(const BooleanRelation& r) {
    BooleanRelation out = r;
    const std::size_t n = r.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!out(i, k)) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (out(k, j)) out.set(i, j);
        }
    return out;
}

namespace {

// Mean log-weight of a cycle given as a vertex list.
double cycle_log_mean(const Matrix<double>& logw, const std::vector<std::size_t>& cyc) {
    double sum = 0.0;
    for (std::size_t i = 0; i < cyc.size(); ++i) sum += logw(cyc[i], cyc[(i + 1) % cyc.size()]);
    return sum / static_cast<double>(cyc.size());
}

// Rotates so the smallest index comes first.
void canonicalize(std::vector<std::size_t>& cyc) {
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), it, cyc.end());
}

}  // namespace

std::optional<CycleMean> max_cycle_geomean(const Matrix<double>& m, std::size_t min_len) {
    if (!m.square()) throw std::invalid_argument("max_cycle_geomean: matrix must be square");
    const std::size_t n = m.rows();
    const bool self_loops = min_len <= 1;
    if (n == 0 || (n < 2 && !self_loops)) return std::nullopt;

    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    Matrix<double> logw(n, n, kNegInf);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v && !self_loops) continue;
            const double x = m(u, v);
            if (x < 0.0 || std::isnan(x)) throw std::invalid_argument("max_cycle_geomean: negative entry");
            if (x > 0.0) logw(u, v) = std::log(x);
        }

    // best(k, v): max log-weight of a walk with exactly k edges ending at v.
    Matrix<double> best(n + 1, n, kNegInf);
    Matrix<std::size_t> pred(n + 1, n, 0);
    for (std::size_t v = 0; v < n; ++v) best(0, v) = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t u = 0; u < n; ++u) {
                if (best(k - 1, u) == kNegInf || logw(u, v) == kNegInf) continue;
                const double cand = best(k - 1, u) + logw(u, v);
                if (cand > best(k, v)) {
                    best(k, v) = cand;
                    pred(k, v) = u;
                }
            }

    double lambda = kNegInf;
    std::size_t critical = n;
    for (std::size_t v = 0; v < n; ++v) {
        if (best(n, v) == kNegInf) continue;
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            if (best(k, v) == kNegInf) continue;
            worst = std::min(worst, (best(n, v) - best(k, v)) / static_cast<double>(n - k));
        }
        if (worst > lambda) {
            lambda = worst;
            critical = v;
        }
    }
    if (critical == n) return std::nullopt;

    // The n-edge walk to the critical vertex decomposes into cycles plus a
    // simple path; one of those cycles attains the optimum mean.
    std::vector<std::size_t> walk(n + 1);
    walk[n] = critical;
    for (std::size_t k = n; k >= 1; --k) walk[k - 1] = pred(k, walk[k]);

    std::vector<std::size_t> stack;
    std::vector<std::ptrdiff_t> pos(n, -1);
    CycleMean result;
    double best_mean = kNegInf;
    for (std::size_t v : walk) {
        if (pos[v] >= 0) {
            const auto start = static_cast<std::size_t>(pos[v]);
            std::vector<std::size_t> cyc(stack.begin() + static_cast<std::ptrdiff_t>(start), stack.end());
            for (std::size_t u : cyc) pos[u] = -1;
            stack.resize(start);
            const double mean = cycle_log_mean(logw, cyc);
            if (mean > best_mean || (mean == best_mean && cyc.size() < result.cycle.size())) {
                best_mean = mean;
                canonicalize(cyc);
                result.cycle = std::move(cyc);
            }
        }
        pos[v] = static_cast<std::ptrdiff_t>(stack.size());
        stack.push_back(v);
    }
    if (result.cycle.empty() || best_mean < lambda - 1e-12 * std::max(1.0, std::abs(lambda)))
        throw std::logic_error("max_cycle_geomean: cycle extraction failed");
    result.value = std::exp(best_mean);
    return result;
}

}  // namespace konus
