#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace adjclose {

/// Base-10 floating decimal with 50 significant digits. Sums and products of
/// quoted prices are exact; quotients round at the 50th digit.
using Decimal = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<50>,
                                              boost::multiprecision::et_off>;

/// Relative tolerance used for every comparison that involves a quotient.
inline const Decimal kRelativeTolerance{"1e-9"};

/// Quotient that is exact whenever the true quotient terminates within 40
/// significant digits (60 / 3 is 20, not 19.99...9). Throws std::domain_error
/// on division by zero.
Decimal divide(const Decimal& dividend, const Decimal& divisor);

/// Parses a plain decimal literal: `[$]digits[.digits]` or `[$].digits`, with an
/// optional leading minus sign. No exponents, no thousands separators, at most
/// 30 significant digits. Returns nullopt on anything else.
std::optional<Decimal> parse_decimal(std::string_view text);

/// Fixed-point rendering, rounded half away from zero. Never emits "-0.00".
std::string to_fixed(const Decimal& value, int places);

/// Fixed-point rendering with at least `min_places` and at most `max_places`
/// fractional digits; trailing zeros beyond `min_places` are dropped.
std::string to_fixed_trimmed(const Decimal& value, int min_places, int max_places);

/// Rendering to `digits` significant digits, fixed notation.
std::string to_significant(const Decimal& value, int digits);

/// |a - b| <= rel * max(|a|, |b|)
bool relative_close(const Decimal& a, const Decimal& b, const Decimal& rel = kRelativeTolerance);

Decimal relative_difference(const Decimal& a, const Decimal& b);

}  // namespace adjclose
