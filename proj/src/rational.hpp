#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dss {

/// Exact arbitrary-precision rational. All curve math stays in this type;
/// conversion to floating point happens only when output is rendered.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal such as "0.25" / "1.5e-3".
/// Decimals are read exactly as scaled integers. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_fraction_string(const Rational& value);

/// Decimal with `significant` significant digits, formatted like printf "%.Ng"
/// but rounded from the exact value (half away from zero).
std::string to_decimal_string(const Rational& value, int significant = 12);

/// The double nearest to the rounded decimal form; used for JSON numbers.
double to_rounded_double(const Rational& value, int significant = 12);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational min_of(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max_of(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace dss
