#include "adjclose/domain.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace adjclose {

Price::Price(Decimal value) : value_(std::move(value)) {
    if (value_ < 0) {
        throw std::invalid_argument("price must not be negative");
    }
}

Price::Price(std::string_view literal) {
    auto parsed = parse_decimal(literal);
    if (!parsed) {
        throw std::invalid_argument("not a decimal literal: " + std::string{literal});
    }
    *this = Price{*parsed};
}

std::optional<std::size_t> PriceHistory::index_of(const TradingDate& date) const {
    auto it = std::lower_bound(bars.begin(), bars.end(), date,
                               [](const PriceBar& bar, const TradingDate& d) { return bar.date < d; });
    if (it == bars.end() || it->date != date) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - bars.begin());
}

bool PriceHistory::has_provider_series() const {
    return !bars.empty() && provider_adjclose.size() == bars.size() &&
           std::all_of(provider_adjclose.begin(), provider_adjclose.end(),
                       [](const auto& v) { return v.has_value(); });
}

std::vector<DayActions> actions_by_bar(const PriceHistory& history) {
    std::vector<DayActions> days(history.bars.size());
    for (const auto& action : history.actions) {
        auto index = history.index_of(action.ex_date);
        if (!index) {
            continue;
        }
        auto& day = days[*index];
        if (const auto* cash = std::get_if<CashDistribution>(&action.kind)) {
            day.distribution = day.distribution.value_or(Decimal{0}) + cash->amount.value();
        } else {
            day.split_ratio = std::get<Split>(action.kind).ratio;
        }
    }
    return days;
}

std::optional<std::size_t> AdjustedSeries::index_of(const TradingDate& date) const {
    auto it = std::lower_bound(points.begin(), points.end(), date,
                               [](const AdjustedPoint& p, const TradingDate& d) { return p.date < d; });
    if (it == points.end() || it->date != date) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - points.begin());
}

std::optional<Decimal> AdjustedSeries::value_at(const TradingDate& date) const {
    auto index = index_of(date);
    if (!index) {
        return std::nullopt;
    }
    return points[*index].adjusted;
}

const char* to_string(IncrementKind kind) {
    switch (kind) {
        case IncrementKind::None: return "none";
        case IncrementKind::Reinvested: return "reinvest";
        case IncrementKind::Split: return "split";
        case IncrementKind::ReinvestedAndSplit: return "reinvest+split";
    }
    return "none";
}

std::vector<Violation> validate_history(const PriceHistory& history) {
    std::vector<Violation> out;
    const auto& bars = history.bars;
    if (bars.empty()) {
        out.push_back({ViolationKind::EmptyHistory, std::nullopt, "history has no bars"});
    }

    std::set<TradingDate> seen;
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& bar = bars[i];
        if (!bar.close.is_positive()) {
            out.push_back({ViolationKind::NonPositiveClose, bar.date, "non-positive close price"});
        }
        if (!seen.insert(bar.date).second) {
            out.push_back({ViolationKind::DuplicateDate, bar.date, "duplicate date"});
        } else if (i > 0 && bar.date < bars[i - 1].date) {
            out.push_back({ViolationKind::UnorderedDates, bar.date, "dates not in ascending order"});
        }
    }

    std::optional<TradingDate> first;
    if (!seen.empty()) {
        first = *seen.begin();
    }
    std::map<TradingDate, int> cash_count;
    std::map<TradingDate, int> split_count;
    for (const auto& action : history.actions) {
        const auto& date = action.ex_date;
        if (!seen.contains(date)) {
            out.push_back({ViolationKind::ActionOnUnknownDate, date, "ex-date matches no bar date"});
        } else if (first && date == *first) {
            out.push_back({ViolationKind::ActionOnFirstDate, date, "ex-date on the first bar has no prior close"});
        }
        if (const auto* cash = std::get_if<CashDistribution>(&action.kind)) {
            if (!cash->amount.is_positive()) {
                out.push_back({ViolationKind::NonPositiveDistribution, date, "cash distribution must be positive"});
            }
            if (++cash_count[date] == 2) {
                out.push_back({ViolationKind::DuplicateCashDistribution, date,
                               "more than one cash distribution on ex-date"});
            }
        } else {
            const auto& ratio = std::get<Split>(action.kind).ratio;
            if (ratio <= 0 || ratio == 1) {
                out.push_back({ViolationKind::InvalidSplitRatio, date, "split ratio must be positive and not 1"});
            }
            if (++split_count[date] == 2) {
                out.push_back({ViolationKind::DuplicateSplit, date, "more than one split on ex-date"});
            }
        }
    }

    if (!history.provider_adjclose.empty() && history.provider_adjclose.size() != bars.size()) {
        out.push_back({ViolationKind::ProviderColumnMismatch, std::nullopt,
                       "provider adjusted closes not aligned with bars"});
    }
    return out;
}

}  // namespace adjclose
