#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace flexbh {

using Rational = mpq_class;

/// Formats as "p/q" in lowest terms; integers keep the "/1" so machine
/// output has a single shape.
std::string to_string(const Rational& q);

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace flexbh
