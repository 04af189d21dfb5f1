#include "konus/axioms.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>

namespace konus {

Matrix<double> expenditure_ratios(const CrossValueMatrix& px) {
    const std::size_t T = px.size();
    Matrix<double> g(T, T, 1.0);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t s = 0; s < T; ++s)
            if (t != s) g(t, s) = px(t, t) / px(t, s);
    return g;
}

BooleanRelation revealed_preference(const CrossValueMatrix& px, double omega, double tolerance) {
    const std::size_t T = px.size();
    const Matrix<double> g = expenditure_ratios(px);
    BooleanRelation r(T);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t s = 0; s < T; ++s)
            if (t != s && g(t, s) >= omega - tolerance) r.set(t, s);
    return r;
}

namespace {

// BFS parents from `from`. Visiting neighbours in ascending order makes every
// recovered path the lexicographically smallest among the shortest ones.
void bfs_parents(const BooleanRelation& r, std::size_t from, std::vector<std::size_t>& parent_scratch) {
    const std::size_t T = r.size();
    const std::size_t none = T;
    parent_scratch.assign(T, none);
    std::vector<unsigned char> seen(T, 0);
    std::deque<std::size_t> queue{from};
    seen[from] = 1;
    while (!queue.empty()) {
        std::size_t a = queue.front();
        queue.pop_front();
        for (std::size_t b = 0; b < T; ++b) {
            if (!r(a, b) || seen[b]) continue;
            seen[b] = 1;
            parent_scratch[b] = a;
            queue.push_back(b);
        }
    }
}

std::vector<std::size_t> path_to(const std::vector<std::size_t>& parent, std::size_t from, std::size_t to) {
    std::vector<std::size_t> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

double cycle_product(const PaascheMatrix& c, const std::vector<std::size_t>& cyc) {
    double p = 1.0;
    for (std::size_t i = 0; i < cyc.size(); ++i) p *= c(cyc[i], cyc[(i + 1) % cyc.size()]);
    return p;
}

}  // namespace

AxiomVerdict check_garp(const CrossValueMatrix& px, double omega, double tolerance) {
    if (!(omega > 0.0)) throw InputError("omega must be positive");
    const std::size_t T = px.size();
    const Matrix<double> g = expenditure_ratios(px);
    const BooleanRelation r = revealed_preference(px, omega, tolerance);
    const BooleanRelation closure = boolean_closure(r);

    AxiomVerdict verdict{true, omega, {}};
    std::vector<std::size_t> parent;
    std::optional<std::vector<std::size_t>> best;
    for (std::size_t t = 0; t < T; ++t) {
        bool bfs_done = false;
        for (std::size_t s = 0; s < T; ++s) {
            if (s == t || !closure(t, s)) continue;
            if (!(g(s, t) > omega + tolerance)) continue;
            verdict.satisfied = false;
            if (!bfs_done) {
                bfs_parents(r, t, parent);
                bfs_done = true;
            }
            auto chain = path_to(parent, t, s);
            if (!best || chain.size() < best->size() || (chain.size() == best->size() && chain < *best))
                best = std::move(chain);
        }
    }
    if (best) verdict.witness = GarpWitness{std::move(*best)};
    return verdict;
}

AxiomVerdict check_garp(const TradeStatistics& ts, double omega, double tolerance) {
    return check_garp(cross_value_matrix(ts), omega, tolerance);
}

AxiomVerdict check_harp(const PaascheMatrix& c, double omega, double tolerance) {
    if (!(omega > 0.0)) throw InputError("omega must be positive");
    const std::size_t T = c.size();
    Matrix<double> a(T, T, 0.0);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t s = 0; s < T; ++s)
            if (t != s) a(t, s) = c(t, s) / omega;
    const ClosureMatrix closure = maxtimes_closure(a, tolerance);

    AxiomVerdict verdict{!closure.diverged, omega, {}};
    if (!verdict.satisfied) {
        auto best = max_cycle_geomean(c.values, 2);
        HarpWitness w;
        w.cycle = std::move(best->cycle);
        w.product = cycle_product(c, w.cycle);
        verdict.witness = std::move(w);
    }
    return verdict;
}

AxiomVerdict check_harp(const TradeStatistics& ts, double omega, double tolerance) {
    // One good: C(t, s) = P^s / P^t, so every cycle product is exactly 1.
    if (ts.goods() == 1 && ts.periods() > 1) {
        if (!(omega > 0.0)) throw InputError("omega must be positive");
        if (omega >= 1.0 - tolerance) return {true, omega, {}};
    }
    return check_harp(paasche_matrix(ts), omega, tolerance);
}

AxiomVerdict brute_force_harp(const TradeStatistics& ts, double omega, std::size_t max_len, double tolerance,
                              std::size_t budget, CycleReading reading) {
    if (!(omega > 0.0)) throw InputError("omega must be positive");
    const PaascheMatrix c = paasche_matrix(ts);
    const std::size_t T = c.size();
    max_len = std::min(max_len, T);
    const bool literal = reading == CycleReading::Literal;
    AxiomVerdict verdict{true, omega, {}};
    if (T < (literal ? 1u : 2u)) return verdict;

    std::size_t visited = 0;
    std::vector<std::size_t> seq;
    const double limit = 1.0 + tolerance;

    // Depth-first over sequences of exactly k indices, lexicographic order.
    auto search = [&](auto&& self, std::size_t k, double prod) -> bool {
        if (++visited > budget) throw OracleTooLarge("brute_force_harp: enumeration budget exceeded");
        if (seq.size() == k) {
            if (!literal && seq.back() == seq.front()) return false;
            const double closed = prod * c(seq.back(), seq.front()) / omega;
            if (closed > limit) {
                verdict.satisfied = false;
                verdict.witness = HarpWitness{seq, cycle_product(c, seq)};
                return true;
            }
            return false;
        }
        for (std::size_t next = 0; next < T; ++next) {
            if (!seq.empty() && next == seq.back()) continue;
            const double p = seq.empty() ? 1.0 : prod * c(seq.back(), next) / omega;
            seq.push_back(next);
            const bool found = self(self, k, p);
            seq.pop_back();
            if (found) return true;
        }
        return false;
    };
    for (std::size_t k = literal ? 1 : 2; k <= max_len; ++k)
        if (search(search, k, 1.0)) break;
    return verdict;
}

std::string describe(const Witness& w, const TradeStatistics& ts, double omega) {
    std::ostringstream os;
    const auto& ids = ts.period_ids();
    if (const auto* g = std::get_if<GarpWitness>(&w)) {
        os << "GARP(" << omega << ") violated: chain ";
        for (std::size_t i = 0; i < g->chain.size(); ++i) os << (i ? " -> " : "") << ids[g->chain[i]];
        const auto px = cross_value_matrix(ts);
        const std::size_t s = g->violator(), t = g->origin();
        os << " but px[" << ids[s] << "][" << ids[s] << "] = " << px(s, s) << " > omega * px[" << ids[s] << "]["
           << ids[t] << "] = " << omega * px(s, t);
    } else if (const auto* h = std::get_if<HarpWitness>(&w)) {
        os << "HARP(" << omega << ") violated: cycle ";
        for (std::size_t i = 0; i < h->cycle.size(); ++i) os << ids[h->cycle[i]] << " -> ";
        os << ids[h->cycle.front()] << " has Paasche product " << h->product << " > omega^" << h->cycle.size();
    } else {
        os << "satisfied";
    }
    return os.str();
}

}  // namespace konus
