#pragma once

#include <cstdint>
#include <ostream>

namespace hkm {

/// Largest admissible characteristic (exclusive). Residue products then fit in 32 bits.
inline constexpr std::uint32_t kMaxPrime = 1u << 16;

/// Trial division.
bool is_prime(std::uint64_t n);

/// Throws ValidationError unless p is a prime below kMaxPrime.
void require_prime_modulus(std::uint64_t p);

/// Reduces a signed integer into [0, p).
std::uint32_t reduce_mod(std::int64_t value, std::uint32_t p);

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p);
/// Throws PreconditionError on a == 0.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

/// An element of F_p. Operands with different moduli raise RingMismatch.
class FieldScalar {
 public:
  FieldScalar(std::int64_t value, std::uint32_t modulus);

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldScalar operator+(const FieldScalar& o) const;
  FieldScalar operator-(const FieldScalar& o) const;
  FieldScalar operator*(const FieldScalar& o) const;
  FieldScalar operator-() const;
  FieldScalar inverse() const;

  friend bool operator==(const FieldScalar&, const FieldScalar&) = default;
  friend std::ostream& operator<<(std::ostream& os, const FieldScalar& s) { return os << s.value_; }

 private:
  struct Unchecked {};
  FieldScalar(std::uint32_t value, std::uint32_t modulus, Unchecked) noexcept : value_(value), modulus_(modulus) {}
  void check_same(const FieldScalar& o) const;

  std::uint32_t value_;
  std::uint32_t modulus_;
};

}  // namespace hkm
