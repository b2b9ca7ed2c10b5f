#ifndef CONFDIM_RATIONAL_HPP
#define CONFDIM_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace confdim {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parse an exact rational from "p/q", an integer string, or a decimal
/// string like "-0.375". Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

/// Like parse_rational but throws std::invalid_argument with `what_for`
/// in the message.
Rational parse_rational_or_throw(std::string_view text, std::string_view what_for);

/// "p/q" (or just "p" when the denominator is 1).
std::string to_fraction_string(const Rational& q);

/// Natural log of a positive rational, safe far beyond double range.
double log_rational(const Rational& q);

/// Natural log of a positive integer, safe far beyond double range.
double log_integer(const Integer& z);

/// q^e for non-negative integer exponent.
Rational pow_rational(const Rational& q, unsigned long e);

/// Shortest decimal rendering of a double that parses back to the same
/// value.
std::string shortest_double(double x);

} // namespace confdim

#endif
