#pragma once

#include "adjclose/domain.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace adjclose {

struct Warning {
    std::optional<std::size_t> line;
    std::optional<TradingDate> date;
    std::string message;
};

std::string to_string(const Warning& warning);

struct ParsedPrices {
    PriceHistory history;
    std::vector<Warning> warnings;
};

// Price file: header naming at least `date` and `close`; optional
// `distribution`, `adjclose` and `split` columns. Rows may come in any order and
// are returned ascending by date. Empty distribution cells mean zero, a split of
// exactly 1 means no split.
//
// Throws Error with a line number: MalformedRow, DuplicateDate, EmptyFile.
ParsedPrices parse_price_csv(std::string_view text, std::string security = {});

// Distribution file: `ex_date,kind,value` where kind is `cash` or `split` and a
// split value is either `3` or `3:1`. An empty file yields no actions.
//
// Throws Error with a line number: MalformedRow, UnknownKind.
std::vector<CorporateAction> parse_distribution_csv(std::string_view text);

struct MergeResult {
    PriceHistory history;
    std::vector<Warning> warnings;
};

/// Attaches `actions` to `history`. Cash amounts landing on the same bar are
/// summed. With `snap_forward`, an ex-date between bars moves to the next bar.
MergeResult merge_actions(const PriceHistory& history, const std::vector<CorporateAction>& actions,
                          bool snap_forward);

/// `date,close,distribution,adjclose` using the computed series, plus a `split`
/// column when the history has splits.
void write_adjusted_csv(const PriceHistory& history, const AdjustedSeries& adjusted, std::ostream& sink);

/// Serializes a history in the price-file format, keeping any provider
/// adjusted closes. parse_price_csv reads it back unchanged.
void write_price_csv(const PriceHistory& history, std::ostream& sink);

/// Price rendering used by every writer: 4 to 6 fractional digits.
std::string format_price(const Decimal& value);

}  // namespace adjclose
