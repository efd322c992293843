#pragma once

#include "adjclose/date.hpp"
#include "adjclose/decimal.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace adjclose {

/// Non-negative currency amount per share. Close prices must additionally be
/// positive, which validate_history checks.
class Price {
public:
    Price() = default;
    /// Throws std::invalid_argument for negative values.
    explicit Price(Decimal value);
    explicit Price(std::string_view literal);

    const Decimal& value() const noexcept { return value_; }
    bool is_positive() const { return value_ > 0; }

    friend bool operator==(const Price&, const Price&) = default;
    friend bool operator<(const Price& a, const Price& b) { return a.value_ < b.value_; }

private:
    Decimal value_{0};
};

struct PriceBar {
    TradingDate date;
    Price close;

    friend bool operator==(const PriceBar&, const PriceBar&) = default;
};

struct CashDistribution {
    Price amount;

    friend bool operator==(const CashDistribution&, const CashDistribution&) = default;
};

/// alpha:1 split. Each held share becomes `ratio` shares.
struct Split {
    Decimal ratio;

    friend bool operator==(const Split&, const Split&) = default;
};

using ActionKind = std::variant<CashDistribution, Split>;

struct CorporateAction {
    TradingDate ex_date;
    ActionKind kind;

    friend bool operator==(const CorporateAction&, const CorporateAction&) = default;
};

/// Closing prices of one security in ascending date order, the corporate
/// actions attached to them, and optionally a provider's adjusted closes
/// (one per bar) kept for auditing.
struct PriceHistory {
    std::string security;
    std::vector<PriceBar> bars;
    std::vector<CorporateAction> actions;
    std::vector<std::optional<Decimal>> provider_adjclose;

    /// Binary search; assumes the bars are sorted.
    std::optional<std::size_t> index_of(const TradingDate& date) const;

    /// True when every bar carries a provider adjusted close.
    bool has_provider_series() const;
};

/// Cash and split amounts that apply to one trading day.
struct DayActions {
    std::optional<Decimal> distribution;
    std::optional<Decimal> split_ratio;

    bool empty() const { return !distribution && !split_ratio; }
};

/// Per-day actions aligned to `history.bars`. Same-day cash distributions are summed.
std::vector<DayActions> actions_by_bar(const PriceHistory& history);

struct GrowthEntry {
    TradingDate date;
    Decimal sigma;
};

/// Daily growth ratios for days 1..n of a history; `start_date` is day 0.
struct GrowthSeries {
    TradingDate start_date;
    std::vector<GrowthEntry> entries;
};

struct AdjustedPoint {
    TradingDate date;
    Decimal adjusted;
};

struct AdjustedSeries {
    std::vector<AdjustedPoint> points;
    TradingDate base_date;
    Decimal base_value;

    std::optional<std::size_t> index_of(const TradingDate& date) const;
    std::optional<Decimal> value_at(const TradingDate& date) const;
};

enum class IncrementKind { None, Reinvested, Split, ReinvestedAndSplit };

const char* to_string(IncrementKind kind);

struct LedgerEntry {
    TradingDate date;
    Decimal shares;
    Decimal purchased;
    IncrementKind kind = IncrementKind::None;
    Decimal position_value;
};

/// Share count of a position whose distributions are reinvested. The first
/// entry is day 0 with `shares == initial_shares`.
struct ReinvestmentLedger {
    Decimal initial_shares;
    std::vector<LedgerEntry> entries;
};

enum class ViolationKind {
    EmptyHistory,
    NonPositiveClose,
    DuplicateDate,
    UnorderedDates,
    ActionOnUnknownDate,
    ActionOnFirstDate,
    NonPositiveDistribution,
    InvalidSplitRatio,
    DuplicateCashDistribution,
    DuplicateSplit,
    ProviderColumnMismatch,
};

struct Violation {
    ViolationKind kind;
    std::optional<TradingDate> date;
    std::string description;
};

/// Every structural problem in `history`; empty iff the history is well formed.
std::vector<Violation> validate_history(const PriceHistory& history);

}  // namespace adjclose
