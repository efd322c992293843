#include "adjclose/audit.hpp"

#include "adjclose/engine.hpp"
#include "adjclose/error.hpp"
#include "adjclose/ingest.hpp"

#include <cstdio>
#include <numeric>

namespace adjclose {

namespace {

// Split ratios p:q with p, q <= 10 that a missing or extra split could produce.
std::optional<std::pair<int, int>> near_simple_ratio(const Decimal& ratio) {
    const Decimal one_percent{"0.01"};
    for (int p = 1; p <= 10; ++p) {
        for (int q = 1; q <= 10; ++q) {
            if (p == q || std::gcd(p, q) != 1) {
                continue;
            }
            Decimal candidate = Decimal{p} / Decimal{q};
            if (boost::multiprecision::abs(ratio - candidate) / candidate <= one_percent) {
                return std::pair{p, q};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

const char* to_string(Severity severity) {
    return severity == Severity::Discrepancy ? "discrepancy" : "info";
}

bool MonthlyComparison::sign_disagreement() const {
    return (computed_ratio >= 1) != (provider_ratio >= 1);
}

AuditReport audit_provider_series(const PriceHistory& history, const AuditOptions& options) {
    if (!history.has_provider_series()) {
        throw Error{ErrorCode::MissingProviderColumn, "every bar needs a provider adjclose value"};
    }
    const auto growth = growth_series(history);
    const auto& bars = history.bars;
    const auto& provider = history.provider_adjclose;
    for (std::size_t i = 0; i < bars.size(); ++i) {
        if (*provider[i] <= 0) {
            throw Error{ErrorCode::InvalidHistory, "provider adjclose must be positive on " + bars[i].date.to_string(),
                        bars[i].date};
        }
    }
    auto days = actions_by_bar(history);

    AuditReport report;
    report.summary.security = history.security;
    report.summary.tolerance = options.tolerance;
    report.summary.days_compared = growth.entries.size();

    for (std::size_t i = 1; i < bars.size(); ++i) {
        const Decimal& computed = growth.entries[i - 1].sigma;
        Decimal observed = divide(*provider[i], *provider[i - 1]);
        Decimal deviation = boost::multiprecision::abs(computed - observed) / computed;
        bool discrepancy = deviation > options.tolerance;
        // below kRelativeTolerance the difference is division rounding, not data
        if (!discrepancy && !(options.include_info && deviation > kRelativeTolerance)) {
            continue;
        }
        AuditFinding finding{bars[i].date, computed, observed, std::nullopt,
                             discrepancy ? Severity::Discrepancy : Severity::Info, {}};
        if (discrepancy) {
            ++report.summary.discrepancies;
            if (auto split = near_simple_ratio(divide(observed, computed))) {
                finding.note = "possible split " + std::to_string(split->first) + ":" + std::to_string(split->second);
            } else {
                const Decimal split_ratio = days[i].split_ratio.value_or(Decimal{1});
                const Decimal recorded = days[i].distribution.value_or(Decimal{0});
                Decimal implied = bars[i - 1].close.value() - divide(split_ratio * bars[i].close.value(), observed) - recorded;
                finding.implied_missing_distribution = implied;
                finding.note = implied > 0 ? "provider implies a distribution not recorded here"
                                           : "provider implies a smaller distribution than recorded";
            }
        }
        report.findings.push_back(std::move(finding));
    }

    // Monthly growth from the previous month's last bar to this month's last bar.
    const auto computed = adjusted_series(growth, bars.front().date, Decimal{1});
    std::size_t month_first = 0;
    for (std::size_t i = 0; i < bars.size(); ++i) {
        bool month_ends = i + 1 == bars.size() || bars[i + 1].date.month() != bars[i].date.month() ||
                          bars[i + 1].date.year() != bars[i].date.year();
        if (!month_ends) {
            continue;
        }
        std::size_t start = month_first == 0 ? 0 : month_first - 1;
        if (start < i) {
            report.summary.months.push_back({bars[i].date.year(), bars[i].date.month(), bars[start].date, bars[i].date,
                                             divide(computed.points[i].adjusted, computed.points[start].adjusted),
                                             divide(*provider[i], *provider[start])});
        }
        month_first = i + 1;
    }
    return report;
}

void write_findings_csv(const AuditReport& report, std::ostream& sink) {
    std::string out = "date,computed_sigma,provider_sigma,implied_distribution,severity,note\n";
    for (const auto& f : report.findings) {
        out += f.date.to_string() + ',' + to_fixed(f.computed_sigma, 6) + ',' + to_fixed(f.provider_sigma, 6) + ',';
        if (f.implied_missing_distribution) {
            out += to_fixed(*f.implied_missing_distribution, 4);
        }
        out += ',';
        out += to_string(f.severity);
        out += ',' + f.note + '\n';
    }
    sink << out;
    if (!sink) {
        throw Error{ErrorCode::SinkWrite, "failed writing audit report"};
    }
}

void write_audit_summary(const AuditReport& report, std::ostream& sink) {
    const auto& s = report.summary;
    sink << "audit " << (s.security.empty() ? "series" : s.security) << ": " << s.days_compared
         << " daily ratios compared, " << s.discrepancies << " discrepanc" << (s.discrepancies == 1 ? "y" : "ies")
         << " (tolerance " << to_fixed_trimmed(s.tolerance, 0, 12) << ")\n";
    for (const auto& f : report.findings) {
        if (f.severity != Severity::Discrepancy) {
            continue;
        }
        sink << "  " << f.date << "  computed " << to_fixed(f.computed_sigma, 4) << "  provider "
             << to_fixed(f.provider_sigma, 4);
        if (f.implied_missing_distribution) {
            sink << "  implied distribution " << format_price(*f.implied_missing_distribution);
        }
        if (!f.note.empty()) {
            sink << "  (" << f.note << ")";
        }
        sink << '\n';
    }
    sink << "month    start       end         computed  provider\n";
    for (const auto& m : s.months) {
        char month[8];
        std::snprintf(month, sizeof month, "%04d-%02u", m.year, m.month);
        sink << month << "  " << m.start_date << "  " << m.end_date << "  " << to_fixed(m.computed_ratio, 4) << "    "
             << to_fixed(m.provider_ratio, 4);
        if (m.sign_disagreement()) {
            sink << "  <- provider shows " << (m.provider_ratio < 1 ? "a loss" : "a gain") << ", computed shows "
                 << (m.computed_ratio < 1 ? "a loss" : "a gain");
        }
        sink << '\n';
    }
}

}  // namespace adjclose
