#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dendro {

/// Exact rational number. Always kept in lowest terms.
using Rational = mpq_class;

/// Parses `n`, `n/d` or `-n/d`. Throws InputError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Lowest-terms text: `n` for integers, `n/d` otherwise.
std::string to_string(const Rational& value);

/// Decimal approximation, for display columns only.
double approx(const Rational& value);

}  // namespace dendro
