#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>

namespace hkm {

/// Upper bound on ring variables. Exponent vectors are stored densely.
inline constexpr std::size_t kMaxVars = 8;

using Exponent = std::uint16_t;
inline constexpr std::uint32_t kMaxExponent = 0xFFFF;

/// Dense exponent vector x^a over a fixed number of variables.
///
/// Every producing operation checks the per-variable width; exceeding it
/// raises ExponentOverflow instead of wrapping.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::initializer_list<std::uint32_t> exponents);
  explicit Monomial(std::span<const std::uint32_t> exponents);

  /// x_index^power in nvars variables.
  static Monomial variable_power(std::size_t nvars, std::size_t index, std::uint32_t power);

  std::size_t size() const noexcept { return nvars_; }
  Exponent operator[](std::size_t i) const noexcept { return exp_[i]; }
  std::uint32_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  /// True when *this divides other.
  bool divides(const Monomial& other) const noexcept;
  bool coprime(const Monomial& other) const noexcept;

  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;
  Monomial pow(std::uint32_t k) const;

  /// Index of the single variable in the support, or size() if the support is not a single variable.
  std::size_t pure_power_variable() const noexcept;
  /// Bitmask of variables with positive exponent.
  std::uint32_t support() const noexcept;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.nvars_ == b.nvars_ && a.exp_ == b.exp_;
  }

  std::size_t hash() const noexcept;

 private:
  void set(std::size_t i, std::uint64_t value);

  std::array<Exponent, kMaxVars> exp_{};
  std::uint8_t nvars_ = 0;
  std::uint32_t degree_ = 0;
};

enum class MonomialOrder { lex, grlex, grevlex };

std::string_view to_string(MonomialOrder order);
/// Accepts "lex", "grlex", "grevlex". Throws ValidationError otherwise.
MonomialOrder parse_monomial_order(std::string_view name);

/// Total order comparison; variable 0 is the largest variable.
/// Throws RingMismatch when the variable counts differ.
std::strong_ordering compare(const Monomial& a, const Monomial& b, MonomialOrder order);

/// Unchecked variant for hot loops; callers guarantee equal sizes.
std::strong_ordering compare_unchecked(const Monomial& a, const Monomial& b, MonomialOrder order) noexcept;

}  // namespace hkm

template <>
struct std::hash<hkm::Monomial> {
  std::size_t operator()(const hkm::Monomial& m) const noexcept { return m.hash(); }
};
