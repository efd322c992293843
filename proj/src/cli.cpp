#include "adjclose/cli.hpp"

#include "adjclose/audit.hpp"
#include "adjclose/engine.hpp"
#include "adjclose/error.hpp"
#include "adjclose/ingest.hpp"
#include "adjclose/plot.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace adjclose {

namespace {

struct Options {
    std::vector<std::string> prices;
    std::vector<std::string> distributions;
    std::string base_date;
    std::string base_value;
    std::string start;
    std::string end;
    std::string shares;
    std::string tolerance{"0.0001"};
    std::string out_path;
    std::string svg_path;
    bool snap_forward = false;
    bool verbose = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) {
        throw Error{ErrorCode::Io, "cannot open " + path};
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw Error{ErrorCode::Io, "cannot read " + path};
    }
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file{path, std::ios::binary | std::ios::trunc};
    file << content;
    file.close();
    if (!file) {
        throw Error{ErrorCode::SinkWrite, "cannot write " + path};
    }
}

// Bad flag values are input errors, like a malformed row.
TradingDate date_flag(const std::string& text, const char* flag) {
    auto date = TradingDate::parse(text);
    if (!date) {
        throw Error{ErrorCode::MalformedRow, std::string{flag} + ": expected YYYY-MM-DD, got '" + text + "'"};
    }
    return *date;
}

Decimal positive_flag(const std::string& text, const char* flag) {
    auto value = parse_decimal(text);
    if (!value || *value <= 0) {
        throw Error{ErrorCode::MalformedRow, std::string{flag} + ": expected a positive decimal, got '" + text + "'"};
    }
    return *value;
}

Decimal tolerance_flag(const std::string& text) {
    // Also accepts scientific notation such as 1e-4.
    if (auto plain = parse_decimal(text); plain && *plain > 0) {
        return *plain;
    }
    auto e = text.find_first_of("eE");
    if (e != std::string::npos) {
        auto mantissa = parse_decimal(text.substr(0, e));
        std::string exponent = text.substr(e + 1);
        bool negative = !exponent.empty() && exponent.front() == '-';
        if (negative || (!exponent.empty() && exponent.front() == '+')) {
            exponent.erase(0, 1);
        }
        if (mantissa && *mantissa > 0 && !exponent.empty() && exponent.size() <= 3 &&
            std::all_of(exponent.begin(), exponent.end(), [](unsigned char c) { return std::isdigit(c); })) {
            Decimal value = *mantissa;
            for (int i = 0, n = std::stoi(exponent); i < n; ++i) {
                value = negative ? divide(value, Decimal{10}) : Decimal{value * 10};
            }
            return value;
        }
    }
    throw Error{ErrorCode::MalformedRow, "--tolerance: expected a positive number, got '" + text + "'"};
}

void report_warnings(const std::string& source, const std::vector<Warning>& warnings, std::ostream& err) {
    for (const auto& w : warnings) {
        err << "warning: " << source << ": " << to_string(w) << '\n';
    }
}

PriceHistory load_history(const std::string& price_path, const std::string* distribution_path, bool snap_forward,
                          std::ostream& err) {
    auto parsed = parse_price_csv(read_file(price_path), security_from_path(price_path));
    report_warnings(price_path, parsed.warnings, err);
    PriceHistory history = std::move(parsed.history);
    if (distribution_path) {
        auto actions = parse_distribution_csv(read_file(*distribution_path));
        auto merged = merge_actions(history, actions, snap_forward);
        report_warnings(*distribution_path, merged.warnings, err);
        history = std::move(merged.history);
    }
    auto violations = validate_history(history);
    if (!violations.empty()) {
        std::string message = price_path + ": invalid history";
        for (const auto& v : violations) {
            message += "\n  ";
            if (v.date) {
                message += v.date->to_string() + ": ";
            }
            message += v.description;
        }
        throw Error{ErrorCode::InvalidHistory, message, violations.front().date};
    }
    return history;
}

const std::string* single_distribution(const Options& options) {
    if (options.distributions.size() > 1) {
        throw Error{ErrorCode::MalformedRow, "--distributions may be given only once for this command"};
    }
    return options.distributions.empty() ? nullptr : &options.distributions.front();
}

void emit(const Options& options, const std::string& content, std::ostream& out) {
    if (options.out_path.empty()) {
        out << content;
        return;
    }
    write_file(options.out_path, content);
}

int cmd_adjust(const Options& options, std::ostream& out, std::ostream& err) {
    auto base_date = date_flag(options.base_date, "--base-date");
    auto base_value = positive_flag(options.base_value, "--base-value");
    auto history = load_history(options.prices.front(), single_distribution(options), options.snap_forward, err);
    auto adjusted = adjusted_series(history, base_date, base_value);
    std::ostringstream csv;
    write_adjusted_csv(history, adjusted, csv);
    emit(options, csv.str(), out);
    return kExitOk;
}

int cmd_returns(const Options& options, std::ostream& out, std::ostream& err) {
    auto start = date_flag(options.start, "--start");
    auto end = date_flag(options.end, "--end");
    auto history = load_history(options.prices.front(), single_distribution(options), options.snap_forward, err);
    // Any anchor gives the same ratios; anchor at the start date when present.
    auto growth = growth_series(history);
    auto anchor = history.index_of(start) ? start : history.bars.front().date;
    auto result = period_return(adjusted_series(growth, anchor, Decimal{1}), start, end);
    std::string line = "growth=" + to_significant(result.growth_ratio, 4) +
                       " return=" + to_fixed(result.total_return * 100, 2) + "%\n";
    emit(options, line, out);
    return kExitOk;
}

int cmd_reinvest(const Options& options, std::ostream& out, std::ostream& err) {
    auto shares = positive_flag(options.shares, "--shares");
    auto history = load_history(options.prices.front(), single_distribution(options), options.snap_forward, err);
    auto ledger = reinvestment_ledger(history, shares);
    std::string csv = "date,shares,purchased,kind,position_value\n";
    for (const auto& e : ledger.entries) {
        csv += e.date.to_string() + ',' + to_fixed(e.shares, 6) + ',' + to_fixed(e.purchased, 6) + ',' +
               to_string(e.kind) + ',' + to_fixed(e.position_value, 4) + '\n';
    }
    emit(options, csv, out);
    return kExitOk;
}

int cmd_audit(const Options& options, std::ostream& out, std::ostream& err) {
    AuditOptions audit_options;
    audit_options.tolerance = tolerance_flag(options.tolerance);
    audit_options.include_info = options.verbose;
    auto history = load_history(options.prices.front(), single_distribution(options), options.snap_forward, err);
    auto report = audit_provider_series(history, audit_options);
    std::ostringstream csv;
    write_findings_csv(report, csv);
    emit(options, csv.str(), out);
    write_audit_summary(report, err);
    return report.summary.discrepancies == 0 ? kExitOk : kExitDiscrepancy;
}

int cmd_plot(const Options& options, std::ostream& out, std::ostream& err) {
    auto base_date = date_flag(options.base_date, "--base-date");
    auto base_value = positive_flag(options.base_value, "--base-value");
    if (options.distributions.size() > options.prices.size()) {
        throw Error{ErrorCode::MalformedRow, "more distribution files than price files"};
    }
    std::vector<NamedSeries> series;
    std::map<std::string, int> name_count;
    for (std::size_t i = 0; i < options.prices.size(); ++i) {
        const std::string* distributions = i < options.distributions.size() ? &options.distributions[i] : nullptr;
        auto history = load_history(options.prices[i], distributions, options.snap_forward, err);
        std::string name = history.security.empty() ? "SERIES" : history.security;
        if (int seen = name_count[name]++; seen > 0) {
            name += "_" + std::to_string(seen + 1);
        }
        if (!history.index_of(base_date)) {
            throw Error{ErrorCode::BaseDateNotInHistory,
                        options.prices[i] + ": base date " + base_date.to_string() + " is not in the history",
                        base_date};
        }
        series.push_back({std::move(name), adjusted_series(history, base_date, base_value)});
    }
    std::ostringstream csv;
    write_normalized_csv(series, csv);
    if (!options.svg_path.empty()) {
        write_file(options.svg_path, render_svg(series, "Adjusted closing prices, base " +
                                                            to_fixed_trimmed(base_value, 0, 6) + " on " +
                                                            base_date.to_string()));
    }
    emit(options, csv.str(), out);
    return kExitOk;
}

}  // namespace

std::string security_from_path(const std::string& path) {
    std::string stem = std::filesystem::path{path}.filename().string();
    stem = stem.substr(0, stem.find_first_of("_."));
    std::transform(stem.begin(), stem.end(), stem.begin(), [](unsigned char c) { return std::toupper(c); });
    return stem;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adjusted closing prices, total returns and dividend reinvestment from close/distribution data",
                 "adjclose"};
    app.require_subcommand(1);
    Options options;

    auto add_common = [&](CLI::App* cmd, bool many_prices) {
        if (many_prices) {
            cmd->add_option("prices", options.prices, "Price CSV files")->required();
        } else {
            cmd->add_option("prices", options.prices, "Price CSV file")->required()->expected(1);
        }
        cmd->add_option("-d,--distributions", options.distributions, "Distribution CSV (ex_date,kind,value)");
        cmd->add_flag("--snap-forward", options.snap_forward,
                      "Move ex-dates that are not trading days to the next trading day");
        cmd->add_option("-o,--out", options.out_path, "Write output to this file instead of stdout");
    };

    auto* adjust = app.add_subcommand("adjust", "Write adjusted closes anchored at a base date and value");
    add_common(adjust, false);
    adjust->add_option("--base-date", options.base_date, "Anchor date (YYYY-MM-DD)")->required();
    adjust->add_option("--base-value", options.base_value, "Adjusted close on the anchor date")->required();

    auto* returns = app.add_subcommand("returns", "Growth ratio and total return between two dates");
    add_common(returns, false);
    returns->add_option("--start", options.start, "Start date (YYYY-MM-DD)")->required();
    returns->add_option("--end", options.end, "End date (YYYY-MM-DD)")->required();

    auto* reinvest = app.add_subcommand("reinvest", "Share ledger with distributions reinvested");
    add_common(reinvest, false);
    reinvest->add_option("--shares", options.shares, "Initial share count")->required();

    auto* audit = app.add_subcommand("audit", "Check a provider adjclose column against computed growth ratios");
    add_common(audit, false);
    audit->add_option("--tolerance", options.tolerance, "Relative tolerance on daily ratios (default 1e-4)");
    audit->add_flag("--verbose", options.verbose, "Also list days that differ within tolerance");

    auto* plot = app.add_subcommand("plot", "Normalized series of one or more securities on a common base");
    add_common(plot, true);
    plot->add_option("--base-date", options.base_date, "Common base date (YYYY-MM-DD)")->required();
    plot->add_option("--base-value", options.base_value, "Value of every series on the base date")->required();
    plot->add_option("--svg", options.svg_path, "Also write a static SVG line chart");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (adjust->parsed()) {
            return cmd_adjust(options, out, err);
        }
        if (returns->parsed()) {
            return cmd_returns(options, out, err);
        }
        if (reinvest->parsed()) {
            return cmd_reinvest(options, out, err);
        }
        if (audit->parsed()) {
            return cmd_audit(options, out, err);
        }
        return cmd_plot(options, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_input_error(e.code()) ? kExitInput : kExitDomain;
    }
}

}  // namespace adjclose
