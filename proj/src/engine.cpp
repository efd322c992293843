#include "adjclose/engine.hpp"

#include "adjclose/error.hpp"

#include <string>

namespace adjclose {

namespace {

void require_valid(const PriceHistory& history) {
    auto violations = validate_history(history);
    if (violations.empty()) {
        return;
    }
    const auto& first = violations.front();
    std::string message = "invalid history";
    if (first.date) {
        message += " at " + first.date->to_string();
    }
    message += ": " + first.description;
    if (violations.size() > 1) {
        message += " (+" + std::to_string(violations.size() - 1) + " more)";
    }
    throw Error{ErrorCode::InvalidHistory, message, first.date};
}

Decimal ratio_for_day(const Decimal& prev_close, const Decimal& close, const DayActions& actions,
                      const std::optional<TradingDate>& date) {
    if (prev_close <= 0 || close <= 0) {
        throw Error{ErrorCode::InvalidArgument, "close prices must be positive", date};
    }
    Decimal start = prev_close;
    if (actions.distribution) {
        start -= *actions.distribution;
        if (start <= 0) {
            std::string message = "distribution " + to_fixed_trimmed(*actions.distribution, 4, 6) +
                                  " is not below prior close " + to_fixed_trimmed(prev_close, 4, 6);
            if (date) {
                message += " on " + date->to_string();
            }
            throw Error{ErrorCode::NonPositiveExPrice, message, date};
        }
    }
    if (!actions.split_ratio) {
        return divide(close, start);
    }
    if (*actions.split_ratio <= 0) {
        throw Error{ErrorCode::InvalidArgument, "split ratio must be positive", date};
    }
    // multiply before dividing so that 3 * 10 / 30 is exactly 1
    return divide(*actions.split_ratio * close, start);
}

}  // namespace

Decimal daily_growth_ratio(const Price& prev_close, const Price& close, const DayActions& actions) {
    return ratio_for_day(prev_close.value(), close.value(), actions, std::nullopt);
}

Decimal daily_growth_ratio(const Price& prev_close, const Price& close, const std::optional<ActionKind>& action) {
    DayActions day;
    if (action) {
        if (const auto* cash = std::get_if<CashDistribution>(&*action)) {
            day.distribution = cash->amount.value();
        } else {
            day.split_ratio = std::get<Split>(*action).ratio;
        }
    }
    return daily_growth_ratio(prev_close, close, day);
}

Decimal split_as_distribution(const Price& prev_close, const Decimal& ratio) {
    if (ratio <= 0) {
        throw Error{ErrorCode::InvalidArgument, "split ratio must be positive"};
    }
    return divide((ratio - 1) * prev_close.value(), ratio);
}

GrowthSeries growth_series(const PriceHistory& history) {
    require_valid(history);
    auto days = actions_by_bar(history);
    GrowthSeries series;
    series.start_date = history.bars.front().date;
    series.entries.reserve(history.bars.size() - 1);
    for (std::size_t i = 1; i < history.bars.size(); ++i) {
        const auto& bar = history.bars[i];
        series.entries.push_back(
            {bar.date, ratio_for_day(history.bars[i - 1].close.value(), bar.close.value(), days[i], bar.date)});
    }
    return series;
}

AdjustedSeries adjusted_series(const GrowthSeries& growth, const TradingDate& base_date, const Decimal& base_value) {
    if (base_value <= 0) {
        throw Error{ErrorCode::InvalidArgument, "base value must be positive"};
    }
    AdjustedSeries series;
    series.base_date = base_date;
    series.base_value = base_value;
    series.points.resize(growth.entries.size() + 1);
    series.points[0].date = growth.start_date;
    for (std::size_t i = 0; i < growth.entries.size(); ++i) {
        series.points[i + 1].date = growth.entries[i].date;
    }
    auto base = series.index_of(base_date);
    if (!base) {
        throw Error{ErrorCode::BaseDateNotInHistory, "base date " + base_date.to_string() + " is not in the history",
                    base_date};
    }

    series.points[*base].adjusted = base_value;
    // entries[i - 1] holds the ratio for point i
    for (std::size_t i = *base + 1; i < series.points.size(); ++i) {
        series.points[i].adjusted = series.points[i - 1].adjusted * growth.entries[i - 1].sigma;
    }
    for (std::size_t i = *base; i > 0; --i) {
        series.points[i - 1].adjusted = divide(series.points[i].adjusted, growth.entries[i - 1].sigma);
    }
    return series;
}

AdjustedSeries adjusted_series(const PriceHistory& history, const TradingDate& base_date, const Decimal& base_value) {
    return adjusted_series(growth_series(history), base_date, base_value);
}

PeriodReturn period_return(const AdjustedSeries& adjusted, const TradingDate& start, const TradingDate& end) {
    auto start_value = adjusted.value_at(start);
    if (!start_value) {
        throw Error{ErrorCode::DateNotInSeries, "start date " + start.to_string() + " is not in the series", start};
    }
    auto end_value = adjusted.value_at(end);
    if (!end_value) {
        throw Error{ErrorCode::DateNotInSeries, "end date " + end.to_string() + " is not in the series", end};
    }
    if (!(start < end)) {
        throw Error{ErrorCode::StartNotBeforeEnd,
                    "start date " + start.to_string() + " is not before end date " + end.to_string(), start};
    }
    Decimal growth = divide(*end_value, *start_value);
    return {start, end, growth, growth - 1};
}

ReinvestmentLedger reinvestment_ledger(const PriceHistory& history, const Decimal& initial_shares) {
    if (initial_shares <= 0) {
        throw Error{ErrorCode::InvalidArgument, "initial share count must be positive"};
    }
    // Computing the growth series first surfaces NonPositiveExPrice before any
    // share arithmetic divides by the ex-close.
    growth_series(history);
    auto days = actions_by_bar(history);

    ReinvestmentLedger ledger;
    ledger.initial_shares = initial_shares;
    ledger.entries.reserve(history.bars.size());
    ledger.entries.push_back({history.bars.front().date, initial_shares, Decimal{0}, IncrementKind::None,
                              initial_shares * history.bars.front().close.value()});
    for (std::size_t i = 1; i < history.bars.size(); ++i) {
        const auto& prev = ledger.entries.back();
        const auto& day = days[i];
        Decimal shares = prev.shares;
        IncrementKind kind = IncrementKind::None;
        if (day.distribution) {
            const Decimal& prev_close = history.bars[i - 1].close.value();
            shares += divide(shares * *day.distribution, prev_close - *day.distribution);
            kind = IncrementKind::Reinvested;
        }
        if (day.split_ratio) {
            shares *= *day.split_ratio;
            kind = kind == IncrementKind::Reinvested ? IncrementKind::ReinvestedAndSplit : IncrementKind::Split;
        }
        const auto& bar = history.bars[i];
        ledger.entries.push_back({bar.date, shares, shares - prev.shares, kind, shares * bar.close.value()});
    }
    return ledger;
}

}  // namespace adjclose
