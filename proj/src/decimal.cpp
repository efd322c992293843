#include "adjclose/decimal.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <vector>

namespace adjclose {

namespace {

constexpr std::size_t kMaxSignificantDigits = 30;
constexpr int kSnapDigits = 40;
constexpr int kMaxShift = 300;

// Exact 10^k for |k| <= kMaxShift.
const Decimal& exact_power_of_ten(int exponent) {
    static const std::vector<Decimal> table = [] {
        std::vector<Decimal> powers;
        powers.reserve(2 * kMaxShift + 1);
        for (int k = -kMaxShift; k <= kMaxShift; ++k) {
            powers.emplace_back("1e" + std::to_string(k));
        }
        return powers;
    }();
    return table[static_cast<std::size_t>(exponent + kMaxShift)];
}

// Rounds |value| * 10^places half away from zero and returns the digit string.
std::string scaled_digits(const Decimal& magnitude, int places) {
    Decimal scaled = boost::multiprecision::round(magnitude * exact_power_of_ten(places));
    auto integer = scaled.convert_to<boost::multiprecision::cpp_int>();
    std::string digits = integer.str();
    if (static_cast<int>(digits.size()) <= places) {
        digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    return digits;
}

}  // namespace

Decimal divide(const Decimal& dividend, const Decimal& divisor) {
    if (divisor == 0) {
        throw std::domain_error("division by zero");
    }
    Decimal quotient = dividend / divisor;
    if (quotient == 0) {
        return quotient;
    }
    // order() is the base-10 exponent of the leading digit.
    const int order = static_cast<int>(quotient.backend().order());
    const int shift = kSnapDigits - 1 - order;
    if (shift > kMaxShift || shift < -kMaxShift) {
        return quotient;
    }
    Decimal snapped =
        boost::multiprecision::round(quotient * exact_power_of_ten(shift)) * exact_power_of_ten(-shift);
    return snapped * divisor == dividend ? snapped : quotient;
}

std::optional<Decimal> parse_decimal(std::string_view text) {
    bool negative = false;
    if (!text.empty() && text.front() == '-') {
        negative = true;
        text.remove_prefix(1);
    }
    if (!text.empty() && text.front() == '$') {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return std::nullopt;
    }
    auto dot = text.find('.');
    std::string_view integral = text.substr(0, dot);
    std::string_view fraction =
        dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (dot != std::string_view::npos && fraction.empty()) {
        return std::nullopt;
    }
    if (integral.empty() && fraction.empty()) {
        return std::nullopt;
    }
    auto all_digits = [](std::string_view s) {
        return std::all_of(s.begin(), s.end(),
                           [](unsigned char c) { return std::isdigit(c) != 0; });
    };
    if (!all_digits(integral) || !all_digits(fraction)) {
        return std::nullopt;
    }

    std::string digits{integral};
    digits.append(fraction);
    auto first_nonzero = digits.find_first_not_of('0');
    if (first_nonzero != std::string::npos) {
        auto last_nonzero = digits.find_last_not_of('0');
        if (last_nonzero - first_nonzero + 1 > kMaxSignificantDigits) {
            return std::nullopt;
        }
    }

    std::string literal = integral.empty() ? std::string{"0"} : std::string{integral};
    if (!fraction.empty()) {
        literal.push_back('.');
        literal.append(fraction);
    }
    Decimal value{literal};
    return negative ? Decimal{-value} : value;
}

std::string to_fixed(const Decimal& value, int places) {
    std::string digits = scaled_digits(boost::multiprecision::abs(value), places);
    bool zero = digits.find_first_not_of('0') == std::string::npos;
    std::string out;
    if (value < 0 && !zero) {
        out.push_back('-');
    }
    auto split = digits.size() - static_cast<std::size_t>(places);
    out.append(digits, 0, split);
    if (places > 0) {
        out.push_back('.');
        out.append(digits, split, std::string::npos);
    }
    return out;
}

std::string to_fixed_trimmed(const Decimal& value, int min_places, int max_places) {
    std::string out = to_fixed(value, max_places);
    if (max_places <= min_places) {
        return out;
    }
    auto dot = out.find('.');
    auto keep = dot + 1 + static_cast<std::size_t>(min_places);
    while (out.size() > keep && out.back() == '0') {
        out.pop_back();
    }
    if (min_places == 0 && out.back() == '.') {
        out.pop_back();
    }
    if (out == "-0") {
        out = "0";
    }
    return out;
}

std::string to_significant(const Decimal& value, int digits) {
    Decimal magnitude = boost::multiprecision::abs(value);
    if (magnitude == 0) {
        return to_fixed(value, digits - 1);
    }
    // base-10 exponent of the leading digit
    const int exponent = static_cast<int>(magnitude.backend().order());
    int places = std::clamp(digits - 1 - exponent, 0, kMaxShift);
    Decimal rounded = boost::multiprecision::round(magnitude * exact_power_of_ten(places)) * exact_power_of_ten(-places);
    if (exponent + 1 <= kMaxShift && exponent + 1 >= -kMaxShift && rounded >= exact_power_of_ten(exponent + 1) && places > 0) {
        --places;  // 9.9996 -> 10.00
    }
    return to_fixed(value, places);
}

Decimal relative_difference(const Decimal& a, const Decimal& b) {
    Decimal scale = std::max(boost::multiprecision::abs(a), boost::multiprecision::abs(b));
    if (scale == 0) {
        return Decimal{0};
    }
    return boost::multiprecision::abs(a - b) / scale;
}

bool relative_close(const Decimal& a, const Decimal& b, const Decimal& rel) {
    return relative_difference(a, b) <= rel;
}

}  // namespace adjclose
