#include "adjclose/ingest.hpp"

#include "adjclose/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>

namespace adjclose {

namespace {

struct Line {
    std::size_t number;
    std::string_view text;
};

bool is_blank(std::string_view text) {
    return std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    return text;
}

std::string lower(std::string_view text) {
    std::string out{text};
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

// Splits on '\n', drops a trailing '\r' and a leading UTF-8 byte order mark.
std::vector<Line> split_lines(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    std::vector<Line> lines;
    std::size_t number = 1;
    while (!text.empty()) {
        auto end = text.find('\n');
        std::string_view line = text.substr(0, end);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back({number++, line});
        if (end == std::string_view::npos) {
            break;
        }
        text.remove_prefix(end + 1);
    }
    return lines;
}

// Comma separated fields; a field may be double-quoted with "" as an escaped quote.
std::vector<std::string> split_fields(const Line& line) {
    std::vector<std::string> fields;
    std::string_view rest = line.text;
    while (true) {
        std::string field;
        std::string_view leading = rest.substr(0, rest.find_first_not_of(" \t"));
        std::string_view after_space = rest.substr(leading.size());
        if (!after_space.empty() && after_space.front() == '"') {
            std::size_t i = 1;
            bool closed = false;
            while (i < after_space.size()) {
                if (after_space[i] == '"') {
                    if (i + 1 < after_space.size() && after_space[i + 1] == '"') {
                        field.push_back('"');
                        i += 2;
                        continue;
                    }
                    closed = true;
                    ++i;
                    break;
                }
                field.push_back(after_space[i++]);
            }
            if (!closed) {
                throw Error::at_line(ErrorCode::MalformedRow, line.number, "unterminated quoted field");
            }
            std::string_view tail = after_space.substr(i);
            auto comma = tail.find(',');
            if (!is_blank(tail.substr(0, comma))) {
                throw Error::at_line(ErrorCode::MalformedRow, line.number, "text after closing quote");
            }
            fields.push_back(std::move(field));
            if (comma == std::string_view::npos) {
                break;
            }
            rest = tail.substr(comma + 1);
            continue;
        }
        auto comma = rest.find(',');
        fields.emplace_back(trim(rest.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        rest = rest.substr(comma + 1);
    }
    for (auto& f : fields) {
        f = std::string{trim(f)};
    }
    return fields;
}

TradingDate parse_date_field(std::string_view text, std::size_t line) {
    auto date = TradingDate::parse(text);
    if (!date) {
        throw Error::at_line(ErrorCode::MalformedRow, line, "bad date '" + std::string{text} + "'");
    }
    return *date;
}

Decimal parse_number_field(std::string_view text, std::size_t line, const char* column) {
    if (text.find(',') != std::string_view::npos) {
        throw Error::at_line(ErrorCode::MalformedRow, line,
                             std::string{"bad "} + column + ": thousands separators are not accepted");
    }
    auto value = parse_decimal(text);
    if (!value) {
        throw Error::at_line(ErrorCode::MalformedRow, line,
                             std::string{"bad "} + column + " '" + std::string{text} + "'");
    }
    return *value;
}

// `3`, `1.5` or `3:1`.
Decimal parse_split_field(std::string_view text, std::size_t line) {
    auto colon = text.find(':');
    Decimal ratio;
    if (colon == std::string_view::npos) {
        ratio = parse_number_field(text, line, "split ratio");
    } else {
        Decimal numerator = parse_number_field(trim(text.substr(0, colon)), line, "split ratio");
        Decimal denominator = parse_number_field(trim(text.substr(colon + 1)), line, "split ratio");
        if (denominator <= 0) {
            throw Error::at_line(ErrorCode::MalformedRow, line, "bad split ratio: zero denominator");
        }
        ratio = divide(numerator, denominator);
    }
    if (ratio <= 0) {
        throw Error::at_line(ErrorCode::MalformedRow, line, "bad split ratio: must be positive");
    }
    return ratio;
}

enum Column { kDate, kClose, kDistribution, kAdjclose, kSplit, kColumnCount };

constexpr std::array<const char*, kColumnCount> kColumnNames{"date", "close", "distribution", "adjclose", "split"};

struct RawRow {
    std::size_t line;
    TradingDate date;
    Decimal close;
    Decimal distribution;
    std::optional<Decimal> adjclose;
    std::optional<Decimal> split;
};

void sort_actions(std::vector<CorporateAction>& actions) {
    std::stable_sort(actions.begin(), actions.end(), [](const CorporateAction& a, const CorporateAction& b) {
        if (a.ex_date != b.ex_date) {
            return a.ex_date < b.ex_date;
        }
        return a.kind.index() < b.kind.index();
    });
}

}  // namespace

std::string to_string(const Warning& warning) {
    std::string out;
    if (warning.line) {
        out += "line " + std::to_string(*warning.line) + ": ";
    }
    if (warning.date) {
        out += warning.date->to_string() + ": ";
    }
    return out + warning.message;
}

std::string format_price(const Decimal& value) { return to_fixed_trimmed(value, 4, 6); }

ParsedPrices parse_price_csv(std::string_view text, std::string security) {
    auto lines = split_lines(text);
    auto header_it = std::find_if(lines.begin(), lines.end(), [](const Line& l) { return !is_blank(l.text); });
    if (header_it == lines.end()) {
        throw Error::at_line(ErrorCode::EmptyFile, lines.empty() ? 1 : lines.back().number, "empty price file");
    }

    ParsedPrices result;
    std::array<std::optional<std::size_t>, kColumnCount> columns{};
    auto header = split_fields(*header_it);
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string name = lower(header[i]);
        auto known = std::find(kColumnNames.begin(), kColumnNames.end(), name);
        if (known == kColumnNames.end()) {
            result.warnings.push_back({header_it->number, std::nullopt, "unknown column '" + header[i] + "' ignored"});
            continue;
        }
        auto& slot = columns[static_cast<std::size_t>(known - kColumnNames.begin())];
        if (slot) {
            throw Error::at_line(ErrorCode::MalformedRow, header_it->number, "duplicate column '" + name + "'");
        }
        slot = i;
    }
    if (!columns[kDate] || !columns[kClose]) {
        throw Error::at_line(ErrorCode::MalformedRow, header_it->number, "header must name date and close columns");
    }

    std::vector<RawRow> rows;
    std::map<TradingDate, std::size_t> first_line;
    std::vector<std::size_t> blank_lines;
    for (auto it = std::next(header_it); it != lines.end(); ++it) {
        const Line& line = *it;
        if (is_blank(line.text)) {
            blank_lines.push_back(line.number);
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() > header.size()) {
            throw Error::at_line(ErrorCode::MalformedRow, line.number, "too many fields");
        }
        auto cell = [&](Column c) -> std::string_view {
            auto index = *columns[c];
            return index < fields.size() ? std::string_view{fields[index]} : std::string_view{};
        };

        RawRow row{line.number, parse_date_field(cell(kDate), line.number), {}, Decimal{0}, {}, {}};
        if (cell(kClose).empty()) {
            throw Error::at_line(ErrorCode::MalformedRow, line.number, "missing close");
        }
        row.close = parse_number_field(cell(kClose), line.number, "close");
        if (row.close <= 0) {
            throw Error::at_line(ErrorCode::MalformedRow, line.number, "close must be positive");
        }
        if (columns[kDistribution] && !cell(kDistribution).empty()) {
            row.distribution = parse_number_field(cell(kDistribution), line.number, "distribution");
            if (row.distribution < 0) {
                throw Error::at_line(ErrorCode::MalformedRow, line.number, "distribution must not be negative");
            }
        }
        if (columns[kAdjclose] && !cell(kAdjclose).empty()) {
            row.adjclose = parse_number_field(cell(kAdjclose), line.number, "adjclose");
            if (*row.adjclose < 0) {
                throw Error::at_line(ErrorCode::MalformedRow, line.number, "adjclose must not be negative");
            }
        }
        if (columns[kSplit] && !cell(kSplit).empty()) {
            row.split = parse_split_field(cell(kSplit), line.number);
        }

        auto [pos, inserted] = first_line.emplace(row.date, line.number);
        if (!inserted) {
            throw Error::at_line(ErrorCode::DuplicateDate, line.number,
                                 "duplicate date " + row.date.to_string() + " (first seen on line " +
                                     std::to_string(pos->second) + ")");
        }
        rows.push_back(std::move(row));
    }

    if (!blank_lines.empty()) {
        const bool trailing = blank_lines.back() == lines.back().number &&
                              blank_lines.size() == static_cast<std::size_t>(lines.back().number - blank_lines.front() + 1);
        result.warnings.push_back({blank_lines.front(), std::nullopt,
                                   trailing ? "trailing blank lines ignored"
                                            : std::to_string(blank_lines.size()) + " blank line(s) ignored"});
    }

    std::sort(rows.begin(), rows.end(), [](const RawRow& a, const RawRow& b) { return a.date < b.date; });

    auto& history = result.history;
    history.security = std::move(security);
    history.bars.reserve(rows.size());
    for (const auto& row : rows) {
        history.bars.push_back({row.date, Price{row.close}});
        if (row.distribution > 0) {
            history.actions.push_back({row.date, CashDistribution{Price{row.distribution}}});
        }
        if (row.split && *row.split != 1) {
            history.actions.push_back({row.date, Split{*row.split}});
        }
        if (columns[kAdjclose]) {
            history.provider_adjclose.push_back(row.adjclose);
        }
    }
    return result;
}

std::vector<CorporateAction> parse_distribution_csv(std::string_view text) {
    auto lines = split_lines(text);
    auto header_it = std::find_if(lines.begin(), lines.end(), [](const Line& l) { return !is_blank(l.text); });
    std::vector<CorporateAction> actions;
    if (header_it == lines.end()) {
        return actions;
    }
    auto header = split_fields(*header_it);
    std::vector<std::string> names;
    std::transform(header.begin(), header.end(), std::back_inserter(names), lower);
    if (names != std::vector<std::string>{"ex_date", "kind", "value"}) {
        throw Error::at_line(ErrorCode::MalformedRow, header_it->number, "header must be ex_date,kind,value");
    }

    for (auto it = std::next(header_it); it != lines.end(); ++it) {
        const Line& line = *it;
        if (is_blank(line.text)) {
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() != 3) {
            throw Error::at_line(ErrorCode::MalformedRow, line.number, "expected 3 fields");
        }
        TradingDate date = parse_date_field(fields[0], line.number);
        std::string kind = lower(fields[1]);
        if (kind == "cash") {
            Decimal amount = parse_number_field(fields[2], line.number, "cash amount");
            if (amount <= 0) {
                throw Error::at_line(ErrorCode::MalformedRow, line.number, "cash amount must be positive");
            }
            actions.push_back({date, CashDistribution{Price{amount}}});
        } else if (kind == "split") {
            Decimal ratio = parse_split_field(fields[2], line.number);
            if (ratio == 1) {
                throw Error::at_line(ErrorCode::MalformedRow, line.number, "split ratio must not be 1");
            }
            actions.push_back({date, Split{ratio}});
        } else {
            throw Error::at_line(ErrorCode::UnknownKind, line.number, "unknown kind '" + fields[1] + "'");
        }
    }
    sort_actions(actions);
    return actions;
}

MergeResult merge_actions(const PriceHistory& history, const std::vector<CorporateAction>& actions, bool snap_forward) {
    auto violations = validate_history(history);
    if (!violations.empty()) {
        throw Error{ErrorCode::InvalidHistory, "cannot merge into invalid history: " + violations.front().description,
                    violations.front().date};
    }

    MergeResult result{history, {}};
    auto& merged = result.history;
    const auto& bars = history.bars;

    std::map<TradingDate, Decimal> existing_cash;
    std::map<TradingDate, Decimal> splits;
    for (const auto& action : history.actions) {
        if (const auto* cash = std::get_if<CashDistribution>(&action.kind)) {
            existing_cash[action.ex_date] += cash->amount.value();
        } else {
            splits[action.ex_date] = std::get<Split>(action.kind).ratio;
        }
    }

    std::map<TradingDate, Decimal> incoming_cash;
    auto sorted = actions;
    sort_actions(sorted);
    for (const auto& action : sorted) {
        TradingDate date = action.ex_date;
        if (date <= bars.front().date) {
            throw Error{ErrorCode::ExDateBeforeHistoryStart,
                        "ex-date " + date.to_string() + " is not after the first bar " + bars.front().date.to_string(),
                        date};
        }
        auto index = history.index_of(date);
        if (!index) {
            auto next = std::lower_bound(bars.begin(), bars.end(), date,
                                         [](const PriceBar& bar, const TradingDate& d) { return bar.date < d; });
            if (!snap_forward || next == bars.end()) {
                throw Error{ErrorCode::ExDateNotTradingDay,
                            "ex-date " + date.to_string() + " is not a trading day in the price data", date};
            }
            result.warnings.push_back(
                {std::nullopt, date, "ex-date moved forward to next trading day " + next->date.to_string()});
            date = next->date;
        }
        if (const auto* cash = std::get_if<CashDistribution>(&action.kind)) {
            incoming_cash[date] += cash->amount.value();
            continue;
        }
        const Decimal& ratio = std::get<Split>(action.kind).ratio;
        auto [pos, inserted] = splits.emplace(date, ratio);
        if (!inserted) {
            if (pos->second != ratio) {
                throw Error{ErrorCode::DuplicateSplit, "conflicting splits on " + date.to_string(), date};
            }
            result.warnings.push_back({std::nullopt, date, "duplicate split ignored"});
        }
    }

    for (const auto& [date, amount] : incoming_cash) {
        auto [pos, inserted] = existing_cash.emplace(date, amount);
        if (!inserted) {
            pos->second += amount;
            result.warnings.push_back(
                {std::nullopt, date, "distribution summed with the amount already in the price file"});
        }
    }

    merged.actions.clear();
    for (const auto& [date, amount] : existing_cash) {
        merged.actions.push_back({date, CashDistribution{Price{amount}}});
    }
    for (const auto& [date, ratio] : splits) {
        merged.actions.push_back({date, Split{ratio}});
    }
    sort_actions(merged.actions);
    return result;
}

namespace {

void write_rows(const PriceHistory& history, const std::vector<std::optional<Decimal>>& adjclose, bool with_adjclose,
                bool adjclose_fixed, std::ostream& sink) {
    auto days = actions_by_bar(history);
    bool with_split = std::any_of(days.begin(), days.end(), [](const DayActions& d) { return d.split_ratio.has_value(); });

    std::string out = "date,close,distribution";
    if (with_adjclose) {
        out += ",adjclose";
    }
    if (with_split) {
        out += ",split";
    }
    out += '\n';
    for (std::size_t i = 0; i < history.bars.size(); ++i) {
        const auto& bar = history.bars[i];
        out += bar.date.to_string();
        out += ',';
        out += format_price(bar.close.value());
        out += ',';
        if (days[i].distribution && *days[i].distribution > 0) {
            out += format_price(*days[i].distribution);
        }
        if (with_adjclose) {
            out += ',';
            if (i < adjclose.size() && adjclose[i]) {
                out += adjclose_fixed ? to_fixed(*adjclose[i], 4) : format_price(*adjclose[i]);
            }
        }
        if (with_split) {
            out += ',';
            if (days[i].split_ratio) {
                out += to_fixed_trimmed(*days[i].split_ratio, 0, 6);
            }
        }
        out += '\n';
    }
    sink << out;
    if (!sink) {
        throw Error{ErrorCode::SinkWrite, "failed writing CSV output"};
    }
}

}  // namespace

void write_adjusted_csv(const PriceHistory& history, const AdjustedSeries& adjusted, std::ostream& sink) {
    std::vector<std::optional<Decimal>> column;
    column.reserve(history.bars.size());
    for (const auto& bar : history.bars) {
        auto value = adjusted.value_at(bar.date);
        if (!value) {
            throw Error{ErrorCode::DateNotInSeries, "adjusted series has no value for " + bar.date.to_string(),
                        bar.date};
        }
        column.push_back(value);
    }
    write_rows(history, column, true, true, sink);
}

void write_price_csv(const PriceHistory& history, std::ostream& sink) {
    write_rows(history, history.provider_adjclose, !history.provider_adjclose.empty(), false, sink);
}

}  // namespace adjclose
