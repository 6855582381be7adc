#pragma once

#include "hkm/polynomial.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hkm {

// Polynomial expression grammar (whitespace is insignificant):
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { "*" unary } ;
//   unary   = ("+" | "-") unary | power ;
//   power   = primary [ "^" integer ] ;
//   primary = integer | identifier | "(" expr ")" ;
//   identifier = letter { letter | digit | "_" } ;
//
// Integer literals are reduced mod p. Exponents are non-negative integers
// and are checked against the exponent width.

/// Parses an expression over the given ring. Errors carry a 1-based column.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

/// Convenience form building a grevlex ring on the fly.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars, std::uint32_t p);

}  // namespace hkm
