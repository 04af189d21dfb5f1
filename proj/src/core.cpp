#include "konus/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace konus {

namespace {

std::vector<std::string> default_labels(std::size_t n, const std::string& prefix) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
    return out;
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(trim(cell));
            cell.clear();
        } else {
            cell.push_back(c);
        }
    }
    cells.push_back(trim(cell));
    return cells;
}

}  // namespace

TradeStatistics::TradeStatistics(Matrix<double> prices, Matrix<double> quantities,
                                 std::vector<std::string> good_ids, std::vector<std::string> period_ids)
    : prices_(std::move(prices)),
      quantities_(std::move(quantities)),
      good_ids_(std::move(good_ids)),
      period_ids_(std::move(period_ids)) {
    const std::size_t T = prices_.rows();
    const std::size_t m = prices_.cols();
    if (T == 0 || m == 0) throw InputError("trade statistics need at least one period and one good");
    if (quantities_.rows() != T || quantities_.cols() != m)
        throw InputError("dimension mismatch: prices are " + std::to_string(T) + "x" + std::to_string(m) +
                         ", quantities are " + std::to_string(quantities_.rows()) + "x" +
                         std::to_string(quantities_.cols()));
    if (good_ids_.empty()) good_ids_ = default_labels(m, "g");
    if (period_ids_.empty()) period_ids_ = default_labels(T, "");
    if (good_ids_.size() != m) throw InputError("expected " + std::to_string(m) + " good ids");
    if (period_ids_.size() != T) throw InputError("expected " + std::to_string(T) + " period ids");

    for (std::size_t t = 0; t < T; ++t) {
        bool any_positive = false;
        for (std::size_t i = 0; i < m; ++i) {
            const double p = prices_(t, i);
            const double x = quantities_(t, i);
            if (!std::isfinite(p) || !(p > 0.0))
                throw InputError("non-positive price at period " + period_ids_[t] + ", good " + good_ids_[i]);
            if (!std::isfinite(x) || x < 0.0)
                throw InputError("negative quantity at period " + period_ids_[t] + ", good " + good_ids_[i]);
            any_positive = any_positive || x > 0.0;
        }
        if (!any_positive) throw InputError("all-zero quantity at period " + period_ids_[t]);
    }
}

GroupSelection::GroupSelection(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    if (indices_.empty()) throw InputError("empty group selection");
    for (std::size_t i = 1; i < indices_.size(); ++i)
        if (indices_[i] <= indices_[i - 1]) throw InputError("group selection must be strictly increasing");
}

GroupSelection GroupSelection::all(std::size_t m) {
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    return GroupSelection(std::move(idx));
}

bool GroupSelection::contains(std::size_t good) const {
    return std::binary_search(indices_.begin(), indices_.end(), good);
}

void GroupSelection::validate_for(std::size_t m) const {
    if (indices_.back() >= m)
        throw InputError("group selection index " + std::to_string(indices_.back()) + " out of range for " +
                         std::to_string(m) + " goods");
}

GroupSelection GroupSelection::intersect(const GroupSelection& other) const {
    std::vector<std::size_t> out;
    std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                          std::back_inserter(out));
    return GroupSelection(std::move(out));
}

CrossValueMatrix cross_value_matrix(const TradeStatistics& ts) {
    const std::size_t T = ts.periods();
    Matrix<double> px(T, T);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t s = 0; s < T; ++s) px(t, s) = dot(ts.price(t), ts.quantity(s));
    return {std::move(px)};
}

PaascheMatrix paasche_matrix(const CrossValueMatrix& px) {
    const std::size_t T = px.size();
    Matrix<double> c(T, T);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t s = 0; s < T; ++s) c(t, s) = t == s ? 1.0 : px(s, s) / px(t, s);
    return {std::move(c)};
}

TradeStatistics restrict_to_group(const TradeStatistics& ts, const GroupSelection& g) {
    g.validate_for(ts.goods());
    const std::size_t T = ts.periods();
    const std::size_t k = g.size();
    Matrix<double> p(T, k), x(T, k);
    std::vector<std::string> ids;
    ids.reserve(k);
    for (std::size_t j = 0; j < k; ++j) ids.push_back(ts.good_ids()[g.indices()[j]]);
    for (std::size_t t = 0; t < T; ++t) {
        bool any_positive = false;
        for (std::size_t j = 0; j < k; ++j) {
            p(t, j) = ts.prices()(t, g.indices()[j]);
            x(t, j) = ts.quantities()(t, g.indices()[j]);
            any_positive = any_positive || x(t, j) > 0.0;
        }
        if (!any_positive) throw InputError("all-zero quantity at period " + ts.period_ids()[t] + " after restriction");
    }
    return TradeStatistics(std::move(p), std::move(x), std::move(ids), ts.period_ids());
}

TradeStatistics rescale_quantities(const TradeStatistics& ts, std::span<const double> mu) {
    const std::size_t T = ts.periods();
    if (mu.size() != T) throw InputError("rescale: expected " + std::to_string(T) + " factors");
    Matrix<double> x = ts.quantities();
    for (std::size_t t = 0; t < T; ++t) {
        if (!std::isfinite(mu[t]) || !(mu[t] > 0.0)) throw InputError("rescale: non-positive factor");
        for (double& v : x.row(t)) v *= mu[t];
    }
    return TradeStatistics(ts.prices(), std::move(x), ts.good_ids(), ts.period_ids());
}

TradeStatistics append_observation(const TradeStatistics& ts, std::span<const double> price,
                                   std::span<const double> quantity, std::string period_id) {
    const std::size_t T = ts.periods();
    const std::size_t m = ts.goods();
    if (price.size() != m || quantity.size() != m) throw InputError("appended observation has wrong dimension");
    Matrix<double> p(T + 1, m), x(T + 1, m);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t i = 0; i < m; ++i) {
            p(t, i) = ts.prices()(t, i);
            x(t, i) = ts.quantities()(t, i);
        }
    for (std::size_t i = 0; i < m; ++i) {
        p(T, i) = price[i];
        x(T, i) = quantity[i];
    }
    auto periods = ts.period_ids();
    periods.push_back(period_id.empty() ? std::to_string(T + 1) : std::move(period_id));
    return TradeStatistics(std::move(p), std::move(x), ts.good_ids(), std::move(periods));
}

TradeStatistics with_prices(const TradeStatistics& ts, Matrix<double> prices) {
    return TradeStatistics(std::move(prices), ts.quantities(), ts.good_ids(), ts.period_ids());
}

Table read_table(std::istream& in, const std::string& source) {
    Table table;
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::vector<double>> rows;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (!have_header) {
            if (cells.size() < 2) throw InputError("header needs a corner cell and at least one good", source, lineno, 1);
            table.columns.assign(cells.begin() + 1, cells.end());
            have_header = true;
            continue;
        }
        if (cells.size() != table.columns.size() + 1)
            throw InputError("expected " + std::to_string(table.columns.size() + 1) + " cells, found " +
                                 std::to_string(cells.size()),
                             source, lineno, 1);
        table.rows.push_back(cells[0]);
        std::vector<double> values;
        values.reserve(table.columns.size());
        for (std::size_t c = 1; c < cells.size(); ++c) {
            const std::string& cell = cells[c];
            double v = 0.0;
            const char* first = cell.data();
            const char* last = cell.data() + cell.size();
            if (!cell.empty() && *first == '+') ++first;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (cell.empty() || ec != std::errc() || ptr != last)
                throw InputError("unparseable cell '" + cell + "'", source, lineno, c + 1);
            values.push_back(v);
        }
        rows.push_back(std::move(values));
    }
    if (!have_header) throw InputError("empty table", source, 1, 1);
    if (rows.empty()) throw InputError("table has no data rows", source, lineno, 1);
    table.values = Matrix<double>::from_rows(rows);
    return table;
}

TradeStatistics load_trade_statistics(std::istream& prices, std::istream& quantities,
                                      const std::string& prices_name, const std::string& quantities_name) {
    Table p = read_table(prices, prices_name);
    Table x = read_table(quantities, quantities_name);
    if (p.columns != x.columns) throw InputError("dimension mismatch: good headers differ between " + prices_name +
                                                 " and " + quantities_name);
    if (p.rows != x.rows) throw InputError("dimension mismatch: period labels differ between " + prices_name +
                                           " and " + quantities_name);
    // Locate the first offending cell so errors point into the file.
    for (std::size_t t = 0; t < p.values.rows(); ++t) {
        for (std::size_t i = 0; i < p.values.cols(); ++i) {
            if (!(p.values(t, i) > 0.0) || !std::isfinite(p.values(t, i)))
                throw InputError("non-positive price", prices_name, t + 2, i + 2);
            if (x.values(t, i) < 0.0 || !std::isfinite(x.values(t, i)))
                throw InputError("negative quantity", quantities_name, t + 2, i + 2);
        }
        auto row = x.values.row(t);
        if (std::none_of(row.begin(), row.end(), [](double v) { return v > 0.0; }))
            throw InputError("all-zero quantity row", quantities_name, t + 2, 2);
    }
    return TradeStatistics(std::move(p.values), std::move(x.values), std::move(p.columns), std::move(p.rows));
}

TradeStatistics load_trade_statistics(const std::string& prices_path, const std::string& quantities_path) {
    std::ifstream p(prices_path);
    if (!p) throw InputError("cannot open " + prices_path);
    std::ifstream x(quantities_path);
    if (!x) throw InputError("cannot open " + quantities_path);
    return load_trade_statistics(p, x, prices_path, quantities_path);
}

}  // namespace konus
