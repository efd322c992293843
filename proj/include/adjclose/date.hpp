#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace adjclose {

/// A calendar day with no time-of-day. Text form is always `YYYY-MM-DD`.
class TradingDate {
public:
    TradingDate() = default;
    /// Throws std::invalid_argument for dates that do not exist.
    TradingDate(int year, unsigned month, unsigned day);
    explicit TradingDate(std::chrono::sys_days days);

    /// Accepts exactly four year digits, two month digits and two day digits
    /// (years 0001-9999). Anything else, including impossible dates, is nullopt.
    static std::optional<TradingDate> parse(std::string_view text);

    std::string to_string() const;

    int year() const { return static_cast<int>(ymd_.year()); }
    unsigned month() const { return static_cast<unsigned>(ymd_.month()); }
    unsigned day() const { return static_cast<unsigned>(ymd_.day()); }
    std::chrono::sys_days days() const { return std::chrono::sys_days{ymd_}; }
    std::chrono::weekday weekday() const { return std::chrono::weekday{days()}; }

    TradingDate plus_days(int count) const;

    friend bool operator==(const TradingDate&, const TradingDate&) = default;
    friend std::strong_ordering operator<=>(const TradingDate& a, const TradingDate& b) {
        return a.days() <=> b.days();
    }

private:
    std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::January,
                                     std::chrono::day{1}};
};

inline std::ostream& operator<<(std::ostream& os, const TradingDate& date) {
    return os << date.to_string();
}

}  // namespace adjclose
