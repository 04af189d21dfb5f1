#include "konus/irrationality.hpp"

#include <algorithm>
#include <cmath>

namespace konus {

namespace {

std::vector<double> breakpoints(const CrossValueMatrix& px) {
    const Matrix<double> g = expenditure_ratios(px);
    std::vector<double> out;
    for (std::size_t t = 0; t < px.size(); ++t)
        for (std::size_t s = 0; s < px.size(); ++s)
            if (t != s) out.push_back(g(t, s));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

double harp_irrationality(const TradeStatistics& ts) {
    // One good: every cycle telescopes to 1, which rounding would blur.
    if (ts.goods() == 1) return 1.0;
    auto best = max_cycle_geomean(paasche_matrix(ts).values, 2);
    return best ? best->value : 1.0;
}

GarpIndex garp_irrationality(const TradeStatistics& ts) {
    const CrossValueMatrix px = cross_value_matrix(ts);
    const std::vector<double> bp = breakpoints(px);
    if (bp.empty()) return {0.0, false};

    // Test points b0, (b0+b1)/2, b1, ..., b_last, 2 b_last; even slots are breakpoints.
    std::vector<double> probe;
    for (std::size_t i = 0; i < bp.size(); ++i) {
        probe.push_back(bp[i]);
        probe.push_back(i + 1 < bp.size() ? 0.5 * (bp[i] + bp[i + 1]) : 2.0 * bp[i]);
    }
    std::size_t lo = 0, hi = probe.size() - 1;  // the last probe has an empty relation
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (check_garp(px, probe[mid]).satisfied) hi = mid;
        else lo = mid + 1;
    }
    if (lo % 2 == 0) return {probe[lo], true};
    return {bp[lo / 2], false};
}

double garp_irrationality_bisection(const TradeStatistics& ts, double tol) {
    const CrossValueMatrix px = cross_value_matrix(ts);
    const std::vector<double> bp = breakpoints(px);
    if (bp.empty()) return 0.0;
    double lo = std::min(1e-6, bp.front() / 2.0);
    double hi = 2.0 * bp.back();
    if (check_garp(px, lo).satisfied) return 0.0;
    while (hi - lo > tol * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (check_garp(px, mid).satisfied) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

IrrationalityReport irrationality_report(const TradeStatistics& ts) {
    IrrationalityReport r;
    const GarpIndex g = garp_irrationality(ts);
    r.omega_g = g.value;
    r.attained_g = g.attained;
    r.omega_h = harp_irrationality(ts);
    if (ts.periods() >= 2) {
        const CrossValueMatrix px = cross_value_matrix(ts);
        if (g.value > 0.0) {
            const double below = g.attained ? std::nextafter(g.value, 0.0) : g.value;
            r.garp_witness = check_garp(px, below).witness;
        }
        auto best = max_cycle_geomean(paasche_matrix(px).values, 2);
        if (best) {
            HarpWitness w{best->cycle, 1.0};
            const PaascheMatrix c = paasche_matrix(px);
            for (std::size_t i = 0; i < w.cycle.size(); ++i) w.product *= c(w.cycle[i], w.cycle[(i + 1) % w.cycle.size()]);
            r.harp_witness = std::move(w);
        }
    }
    return r;
}

}  // namespace konus
