#pragma once

#include "adjclose/domain.hpp"

#include <optional>

namespace adjclose {

/// Growth over a span of trading days. `total_return` is `growth_ratio - 1`.
struct PeriodReturn {
    TradingDate start_date;
    TradingDate end_date;
    Decimal growth_ratio;
    Decimal total_return;
};

// Growth ratio of one trading day from the previous close.
//
//   no action             close / prev_close
//   cash distribution D   close / (prev_close - D)
//   alpha:1 split         alpha * close / prev_close
//   both on one day       alpha * close / (prev_close - D)
//
// The cash amount is taken per pre-split share. Throws NonPositiveExPrice when
// prev_close - D <= 0.
Decimal daily_growth_ratio(const Price& prev_close, const Price& close,
                           const std::optional<ActionKind>& action = std::nullopt);
Decimal daily_growth_ratio(const Price& prev_close, const Price& close, const DayActions& actions);

/// Cash amount equivalent to an alpha:1 split, (alpha - 1) / alpha * prev_close.
/// Negative for reverse splits (alpha < 1).
Decimal split_as_distribution(const Price& prev_close, const Decimal& ratio);

/// One ratio per day 1..n. Throws InvalidHistory if validate_history reports
/// anything, NonPositiveExPrice (with the date) for a distribution that is not
/// below the prior close.
GrowthSeries growth_series(const PriceHistory& history);

/// Adjusted closes anchored at (base_date, base_value): forward of the anchor
/// each value is the previous one times the day's ratio, backward each value is
/// the next one divided by the next day's ratio.
AdjustedSeries adjusted_series(const PriceHistory& history, const TradingDate& base_date,
                               const Decimal& base_value);
AdjustedSeries adjusted_series(const GrowthSeries& growth, const TradingDate& base_date,
                               const Decimal& base_value);

PeriodReturn period_return(const AdjustedSeries& adjusted, const TradingDate& start, const TradingDate& end);

ReinvestmentLedger reinvestment_ledger(const PriceHistory& history, const Decimal& initial_shares);

}  // namespace adjclose
