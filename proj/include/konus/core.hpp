#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "konus/error.hpp"
#include "konus/matrix.hpp"

namespace konus {

/// A panel of T price/quantity observations over m goods.
///
/// Prices are strictly positive; every quantity vector is nonnegative with at
/// least one positive coordinate, so every cross value <P^t, X^s> is positive.
/// Row order is period order. Labels are kept for reporting only.
class TradeStatistics {
public:
    /// Validates and takes ownership. Empty label vectors get defaults
    /// ("1".."T" for periods, "g1".."gm" for goods).
    TradeStatistics(Matrix<double> prices, Matrix<double> quantities,
                    std::vector<std::string> good_ids = {},
                    std::vector<std::string> period_ids = {});

    std::size_t periods() const noexcept { return prices_.rows(); }
    std::size_t goods() const noexcept { return prices_.cols(); }

    std::span<const double> price(std::size_t t) const { return prices_.row(t); }
    std::span<const double> quantity(std::size_t t) const { return quantities_.row(t); }

    const Matrix<double>& prices() const noexcept { return prices_; }
    const Matrix<double>& quantities() const noexcept { return quantities_; }
    const std::vector<std::string>& good_ids() const noexcept { return good_ids_; }
    const std::vector<std::string>& period_ids() const noexcept { return period_ids_; }

    /// <P^t, X^t>
    double expenditure(std::size_t t) const { return dot(price(t), quantity(t)); }

    bool operator==(const TradeStatistics&) const = default;

private:
    Matrix<double> prices_;
    Matrix<double> quantities_;
    std::vector<std::string> good_ids_;
    std::vector<std::string> period_ids_;
};

/// px(t, s) = <P^t, X^s>.
struct CrossValueMatrix {
    Matrix<double> values;

    double operator()(std::size_t t, std::size_t s) const { return values(t, s); }
    std::size_t size() const noexcept { return values.rows(); }
};

/// Paasche price index array C(t, s) = px(s, s) / px(t, s). Unit diagonal.
struct PaascheMatrix {
    Matrix<double> values;

    double operator()(std::size_t t, std::size_t s) const { return values(t, s); }
    std::size_t size() const noexcept { return values.rows(); }
};

/// Strictly increasing, non-empty list of good positions.
class GroupSelection {
public:
    explicit GroupSelection(std::vector<std::size_t> indices);

    /// Every good in [0, m).
    static GroupSelection all(std::size_t m);

    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    std::size_t size() const noexcept { return indices_.size(); }
    bool contains(std::size_t good) const;

    /// Throws InputError if any index is >= m.
    void validate_for(std::size_t m) const;

    /// Goods present in both selections; throws InputError if empty.
    GroupSelection intersect(const GroupSelection& other) const;

    bool operator==(const GroupSelection&) const = default;

private:
    std::vector<std::size_t> indices_;
};

CrossValueMatrix cross_value_matrix(const TradeStatistics& ts);
PaascheMatrix paasche_matrix(const CrossValueMatrix& px);

/// Price change from period `base` to `current` valued at base quantities:
/// px(current, base) / px(base, base).
inline double laspeyres_index(const CrossValueMatrix& px, std::size_t base, std::size_t current) {
    return px(current, base) / px(base, base);
}

/// Same change valued at current quantities: px(current, current) / px(base, current).
inline double paasche_index(const CrossValueMatrix& px, std::size_t base, std::size_t current) {
    return px(current, current) / px(base, current);
}
inline PaascheMatrix paasche_matrix(const TradeStatistics& ts) { return paasche_matrix(cross_value_matrix(ts)); }

/// Statistics on the selected goods only. Throws InputError if some period's
/// restricted quantity vector is all zero.
TradeStatistics restrict_to_group(const TradeStatistics& ts, const GroupSelection& g);

/// Replaces X^t by mu^t X^t. Throws InputError on non-positive mu.
TradeStatistics rescale_quantities(const TradeStatistics& ts, std::span<const double> mu);

/// Returns the statistics with one more period (price, quantity) appended.
TradeStatistics append_observation(const TradeStatistics& ts, std::span<const double> price,
                                   std::span<const double> quantity, std::string period_id = {});

/// Same quantities, different prices (T x m).
TradeStatistics with_prices(const TradeStatistics& ts, Matrix<double> prices);

/// Reads a CSV table: header row "<corner>,<good ids...>", then one row per
/// period "<period id>,<values...>". `source` names the input in errors.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::string> rows;
    Matrix<double> values;
};
Table read_table(std::istream& in, const std::string& source);

TradeStatistics load_trade_statistics(std::istream& prices, std::istream& quantities,
                                      const std::string& prices_name = "prices",
                                      const std::string& quantities_name = "quantities");
TradeStatistics load_trade_statistics(const std::string& prices_path, const std::string& quantities_path);

}  // namespace konus
