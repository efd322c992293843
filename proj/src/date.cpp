#include "adjclose/date.hpp"

#include <cstdio>
#include <stdexcept>

namespace adjclose {

TradingDate::TradingDate(int year, unsigned month, unsigned day)
    : ymd_{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}} {
    if (!ymd_.ok() || year < 1 || year > 9999) {
        throw std::invalid_argument("invalid calendar date");
    }
}

TradingDate::TradingDate(std::chrono::sys_days days) : ymd_{days} {}

std::optional<TradingDate> TradingDate::parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    auto number = [&](std::size_t from, std::size_t count) -> std::optional<int> {
        int value = 0;
        for (std::size_t i = from; i < from + count; ++i) {
            char c = text[i];
            if (c < '0' || c > '9') {
                return std::nullopt;
            }
            value = value * 10 + (c - '0');
        }
        return value;
    };
    auto year = number(0, 4);
    auto month = number(5, 2);
    auto day = number(8, 2);
    if (!year || !month || !day || *year < 1) {
        return std::nullopt;
    }
    std::chrono::year_month_day ymd{std::chrono::year{*year},
                                    std::chrono::month{static_cast<unsigned>(*month)},
                                    std::chrono::day{static_cast<unsigned>(*day)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    return TradingDate{std::chrono::sys_days{ymd}};
}

std::string TradingDate::to_string() const {
    char buffer[16];
    std::snprintf(buffer, sizeof buffer, "%04d-%02u-%02u", year(), month(), day());
    return buffer;
}

TradingDate TradingDate::plus_days(int count) const {
    return TradingDate{days() + std::chrono::days{count}};
}

}  // namespace adjclose
