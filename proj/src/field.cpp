#include "hkm/field.hpp"

#include "hkm/errors.hpp"

#include <string>

namespace hkm {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_prime_modulus(std::uint64_t p) {
  if (!is_prime(p)) throw ValidationError("p must be prime (got " + std::to_string(p) + ")");
  if (p >= kMaxPrime)
    throw ValidationError("p must be below " + std::to_string(kMaxPrime) + " (got " + std::to_string(p) + ")");
}

std::uint32_t reduce_mod(std::int64_t value, std::uint32_t p) {
  std::int64_t r = value % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}

std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t result = 1 % p;
  std::uint32_t base = a % p;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return result;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw PreconditionError("zero has no inverse");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t quotient = r / new_r;
    std::int64_t tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  return reduce_mod(t, p);
}

FieldScalar::FieldScalar(std::int64_t value, std::uint32_t modulus)
    : value_(0), modulus_(modulus) {
  require_prime_modulus(modulus);
  value_ = reduce_mod(value, modulus);
}

void FieldScalar::check_same(const FieldScalar& o) const {
  if (modulus_ != o.modulus_)
    throw RingMismatch("scalars over F_" + std::to_string(modulus_) + " and F_" + std::to_string(o.modulus_));
}

FieldScalar FieldScalar::operator+(const FieldScalar& o) const {
  check_same(o);
  return FieldScalar(add_mod(value_, o.value_, modulus_), modulus_, Unchecked{});
}

FieldScalar FieldScalar::operator-(const FieldScalar& o) const {
  check_same(o);
  return FieldScalar(sub_mod(value_, o.value_, modulus_), modulus_, Unchecked{});
}

FieldScalar FieldScalar::operator*(const FieldScalar& o) const {
  check_same(o);
  return FieldScalar(mul_mod(value_, o.value_, modulus_), modulus_, Unchecked{});
}

FieldScalar FieldScalar::operator-() const { return FieldScalar(sub_mod(0, value_, modulus_), modulus_, Unchecked{}); }

FieldScalar FieldScalar::inverse() const { return FieldScalar(inv_mod(value_, modulus_), modulus_, Unchecked{}); }

}  // namespace hkm
