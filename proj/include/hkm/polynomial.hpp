#pragma once

#include "hkm/field.hpp"
#include "hkm/monomial.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hkm {

/// Coefficient field, variable names and active monomial order.
class PolyRing {
 public:
  /// Validates p (prime, below kMaxPrime), the variable count and name uniqueness.
  PolyRing(std::uint32_t p, std::vector<std::string> vars, MonomialOrder order = MonomialOrder::grevlex);

  static std::shared_ptr<const PolyRing> make(std::uint32_t p, std::vector<std::string> vars,
                                              MonomialOrder order = MonomialOrder::grevlex);

  std::uint32_t characteristic() const noexcept { return p_; }
  const std::vector<std::string>& variables() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_.size(); }
  MonomialOrder order() const noexcept { return order_; }

  /// Index of a variable name, or nvars() when absent.
  std::size_t index_of(std::string_view name) const noexcept;

  /// Same field and variables under another order.
  std::shared_ptr<const PolyRing> with_order(MonomialOrder order) const;

  friend bool operator==(const PolyRing&, const PolyRing&) = default;

 private:
  std::uint32_t p_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

struct Term {
  std::uint32_t coeff;
  Monomial mono;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial in canonical form: terms strictly descending in the
/// ring's order, no zero coefficients. The zero polynomial has no terms.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);
  /// Canonicalizes arbitrary input (sorts, merges duplicates, drops zeros).
  Polynomial(RingPtr ring, std::vector<Term> terms);

  static Polynomial constant(RingPtr ring, std::int64_t value);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, Monomial m, std::uint32_t coeff = 1);
  /// Adopts terms that are already canonical (descending, nonzero, reduced).
  static Polynomial from_canonical_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;

  /// Leading term accessors; precondition !is_zero().
  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().mono; }
  std::uint32_t leading_coeff() const { return leading_term().coeff; }
  FieldScalar coefficient(const Monomial& m) const;

  std::uint32_t total_degree() const noexcept;
  bool is_homogeneous() const noexcept;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(std::uint32_t c) const;
  /// c * m * (*this)
  Polynomial mul_term(std::uint32_t c, const Monomial& m) const;
  Polynomial pow(std::uint64_t k) const;
  Polynomial monic() const;

  /// f^q for q a power of the characteristic; uses additivity of Frobenius.
  Polynomial frobenius(std::uint32_t q) const;

  /// Same polynomial re-expressed in another ring with identical field and variables.
  Polynomial in_ring(RingPtr other) const;

  /// Validator for the canonical-form invariant.
  bool is_canonical() const noexcept;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend Polynomial sub_mul_term(const Polynomial& f, std::uint32_t c, const Monomial& m, const Polynomial& g);

 private:
  void check_ring(const Polynomial& o) const;
  void canonicalize();

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Text form using the ring's variable names, e.g. "x^2 + 2*y*z + 6".
std::string format(const Polynomial& f);
std::string format(const Monomial& m, const PolyRing& ring);

/// Descending merge a + scale*b of canonical term lists.
std::vector<Term> merge_terms(std::span<const Term> a, std::span<const Term> b, std::uint32_t scale,
                              const PolyRing& ring);

/// f - c*m*g, fused. Exposed for the reducer.
Polynomial sub_mul_term(const Polynomial& f, std::uint32_t c, const Monomial& m, const Polynomial& g);

}  // namespace hkm
