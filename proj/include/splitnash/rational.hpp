#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace splitnash {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// base^exp in exact arithmetic. boost::multiprecision has no pow for
// cpp_rational, so this raises numerator and denominator separately.
Rat rat_pow(const Rat& base, unsigned long exp);

// Parses "p/q" or a plain integer string (optional sign, surrounding
// whitespace allowed). Throws std::invalid_argument on malformed input or a
// zero denominator.
Rat parse_rational(const std::string& text);

// Renders as "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rat& value);

}  // namespace splitnash
