#include "hkm/rational.hpp"

#include "hkm/errors.hpp"

#include <cctype>

namespace hkm {

std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw ValidationError("malformed rational '" + std::string(whole) + "'");
  BigInt value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ValidationError("malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (text[i] - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = trim(text);
  if (auto slash = whole.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(trim(whole.substr(0, slash)), whole);
    BigInt den = parse_integer(trim(whole.substr(slash + 1)), whole);
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(whole) + "'");
    return Rational(num, den);
  }
  if (auto dot = whole.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = whole.substr(0, dot);
    std::string_view frac_part = whole.substr(dot + 1);
    const bool negative = !int_part.empty() && int_part.front() == '-';
    BigInt ip = int_part.empty() || int_part == "-" || int_part == "+" ? BigInt(0)
                                                                        : parse_integer(int_part, whole);
    BigInt fp = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, whole);
    BigInt scale = ipow(BigInt(10), static_cast<unsigned>(frac_part.size()));
    Rational magnitude = Rational(boost::multiprecision::abs(ip)) + Rational(fp, scale);
    return negative ? Rational(-magnitude) : magnitude;
  }
  return Rational(parse_integer(whole, whole));
}

double approximate(const Rational& r) { return r.convert_to<double>(); }

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

Rational factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

BigInt ipow(const BigInt& base, unsigned exponent) {
  BigInt result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace hkm
