#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace ccl {

/// Exact probability value. Every mass, bound and LP coefficient in the
/// engine is one of these; doubles only appear in rendered output.
using Rational = boost::multiprecision::mpq_rational;

/// Parses "0.35", "7/20", "1", "-2.5e-1" into an exact rational.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering (denominator always present, e.g. "1/1").
std::string to_fraction_string(const Rational& value);

double to_double(const Rational& value);

/// Exact decimal rendering ("0.35") when the denominator has only factors
/// 2 and 5, otherwise the "p/q" form. Both forms are accepted by parse_rational.
std::string to_literal_string(const Rational& value);

} // namespace ccl
