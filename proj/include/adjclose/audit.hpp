#pragma once

#include "adjclose/domain.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace adjclose {

enum class Severity { Info, Discrepancy };

const char* to_string(Severity severity);

struct AuditFinding {
    TradingDate date;
    Decimal computed_sigma;
    Decimal provider_sigma;
    /// Cash amount that would reconcile the provider's ratio with the recorded
    /// closes. Only set on discrepancies that do not look like a split.
    std::optional<Decimal> implied_missing_distribution;
    Severity severity = Severity::Discrepancy;
    std::string note;
};

/// Growth over one calendar month, measured from the last bar of the previous
/// month (or the month's first bar at the start of the data) to the month's last bar.
struct MonthlyComparison {
    int year = 0;
    unsigned month = 0;
    TradingDate start_date;
    TradingDate end_date;
    Decimal computed_ratio;
    Decimal provider_ratio;

    /// One ratio shows a gain and the other a loss.
    bool sign_disagreement() const;
};

struct AuditSummary {
    std::string security;
    std::size_t days_compared = 0;
    std::size_t discrepancies = 0;
    Decimal tolerance;
    std::vector<MonthlyComparison> months;
};

struct AuditReport {
    std::vector<AuditFinding> findings;
    AuditSummary summary;
};

struct AuditOptions {
    Decimal tolerance{"1e-4"};
    /// Also report days whose ratios differ by more than 1e-9 but stay within tolerance.
    bool include_info = false;
};

/// Compares the provider's day-over-day adjusted-close ratios with computed
/// growth ratios. Throws MissingProviderColumn when any bar lacks a provider
/// adjusted close.
AuditReport audit_provider_series(const PriceHistory& history, const AuditOptions& options = {});

/// `date,computed_sigma,provider_sigma,implied_distribution,severity,note`
void write_findings_csv(const AuditReport& report, std::ostream& sink);

void write_audit_summary(const AuditReport& report, std::ostream& sink);

}  // namespace adjclose
