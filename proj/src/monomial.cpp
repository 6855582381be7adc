#include "hkm/monomial.hpp"

#include "hkm/errors.hpp"

#include <algorithm>

namespace hkm {

namespace {

void check_var_count(std::size_t nvars) {
  if (nvars > kMaxVars)
    throw ValidationError("at most " + std::to_string(kMaxVars) + " variables are supported (got " +
                          std::to_string(nvars) + ")");
}

void check_sizes(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size())
    throw RingMismatch("monomials over " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                       " variables");
}

}  // namespace

Monomial::Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) { check_var_count(nvars); }

Monomial::Monomial(std::initializer_list<std::uint32_t> exponents)
    : Monomial(std::span<const std::uint32_t>(exponents.begin(), exponents.size())) {}

Monomial::Monomial(std::span<const std::uint32_t> exponents) : Monomial(exponents.size()) {
  for (std::size_t i = 0; i < exponents.size(); ++i) set(i, exponents[i]);
}

Monomial Monomial::variable_power(std::size_t nvars, std::size_t index, std::uint32_t power) {
  Monomial m(nvars);
  if (index >= nvars) throw PreconditionError("variable index out of range");
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t i, std::uint64_t value) {
  if (value > kMaxExponent)
    throw ExponentOverflow("exponent " + std::to_string(value) + " exceeds " + std::to_string(kMaxExponent));
  degree_ = degree_ - exp_[i] + static_cast<std::uint32_t>(value);
  exp_[i] = static_cast<Exponent>(value);
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < nvars_; ++i)
    if (exp_[i] > other.exp_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < nvars_; ++i)
    if (exp_[i] != 0 && other.exp_[i] != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  check_sizes(*this, other);
  Monomial r(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) r.set(i, std::uint64_t{exp_[i]} + other.exp_[i]);
  return r;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  check_sizes(*this, divisor);
  if (!divisor.divides(*this)) throw PreconditionError("monomial quotient is not exact");
  Monomial r(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) r.set(i, exp_[i] - divisor.exp_[i]);
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  check_sizes(*this, other);
  Monomial r(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) r.set(i, std::max(exp_[i], other.exp_[i]));
  return r;
}

Monomial Monomial::pow(std::uint32_t k) const {
  Monomial r(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) r.set(i, std::uint64_t{exp_[i]} * k);
  return r;
}

std::size_t Monomial::pure_power_variable() const noexcept {
  std::size_t found = nvars_;
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (exp_[i] == 0) continue;
    if (found != nvars_) return nvars_;
    found = i;
  }
  return found;
}

std::uint32_t Monomial::support() const noexcept {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < nvars_; ++i)
    if (exp_[i] != 0) mask |= 1u << i;
  return mask;
}

std::size_t Monomial::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull ^ nvars_;
  for (std::size_t i = 0; i < nvars_; ++i) {
    h ^= exp_[i];
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::string_view to_string(MonomialOrder order) {
  switch (order) {
    case MonomialOrder::lex: return "lex";
    case MonomialOrder::grlex: return "grlex";
    case MonomialOrder::grevlex: return "grevlex";
  }
  return "?";
}

MonomialOrder parse_monomial_order(std::string_view name) {
  if (name == "lex") return MonomialOrder::lex;
  if (name == "grlex") return MonomialOrder::grlex;
  if (name == "grevlex") return MonomialOrder::grevlex;
  throw ValidationError("unknown monomial order '" + std::string(name) + "'");
}

std::strong_ordering compare_unchecked(const Monomial& a, const Monomial& b, MonomialOrder order) noexcept {
  const std::size_t n = a.size();
  switch (order) {
    case MonomialOrder::lex:
      break;
    case MonomialOrder::grlex:
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      break;
    case MonomialOrder::grevlex:
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      // the smaller exponent in the last differing variable wins
      for (std::size_t i = n; i-- > 0;)
        if (a[i] != b[i]) return b[i] <=> a[i];
      return std::strong_ordering::equal;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

std::strong_ordering compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
  check_sizes(a, b);
  return compare_unchecked(a, b, order);
}

}  // namespace hkm
