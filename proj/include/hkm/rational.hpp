#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace hkm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Serializes as "num/den" with den > 0, always including the denominator.
std::string to_fraction_string(const Rational& r);

/// Accepts "num/den", "num" or a finite decimal like "1.25".
Rational parse_rational(std::string_view text);

/// Closest double, for display only. Never used in comparisons.
double approximate(const Rational& r);

Rational abs(const Rational& r);

Rational factorial(unsigned n);

BigInt ipow(const BigInt& base, unsigned exponent);

}  // namespace hkm
