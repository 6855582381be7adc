#pragma once

#include "hkm/polynomial.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hkm {

/// Finite generating set of an ideal. Zero generators are dropped.
class Ideal {
 public:
  explicit Ideal(RingPtr ring, std::vector<Polynomial> generators = {});

  /// The homogeneous maximal ideal (x_1, ..., x_n).
  static Ideal maximal(const RingPtr& ring);

  const RingPtr& ring() const noexcept { return ring_; }
  std::span<const Polynomial> generators() const noexcept { return generators_; }
  bool empty() const noexcept { return generators_.empty(); }

  bool is_monomial() const noexcept;
  bool is_homogeneous() const noexcept;

  /// Generator-wise union.
  Ideal operator+(const Ideal& other) const;
  /// Products of n-fold generator choices (n >= 1); duplicates merged.
  Ideal power(unsigned n) const;
  Ideal in_ring(const RingPtr& other) const;

  friend bool operator==(const Ideal&, const Ideal&);

 private:
  RingPtr ring_;
  std::vector<Polynomial> generators_;
};

struct GroebnerOptions {
  /// S-pairs that may be reduced before a ResourceError.
  std::uint64_t max_pairs = 1'000'000;
  std::size_t max_basis_size = 100'000;
};

struct GroebnerStats {
  std::uint64_t pairs_created = 0;
  std::uint64_t pairs_reduced = 0;
  std::uint64_t zero_reductions = 0;
  std::uint64_t coprime_skips = 0;
  std::uint64_t chain_skips = 0;
};

/// Reduced Groebner basis: monic elements sorted by ascending leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, std::vector<Polynomial> elements, GroebnerStats stats = {});

  const RingPtr& ring() const noexcept { return ring_; }
  MonomialOrder order() const noexcept { return ring_->order(); }
  std::span<const Polynomial> elements() const noexcept { return elements_; }
  std::span<const Monomial> leading_monomials() const noexcept { return leading_; }
  const GroebnerStats& stats() const noexcept { return stats_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool is_unit() const noexcept;

 private:
  RingPtr ring_;
  std::vector<Polynomial> elements_;
  std::vector<Monomial> leading_;
  GroebnerStats stats_;
};

/// Buchberger's algorithm with the normal selection strategy and the
/// coprime and chain criteria (Gebauer-Moeller update). Throws ResourceError
/// when the budget is exhausted and ExponentOverflow from S-polynomials.
GroebnerBasis buchberger(const Ideal& ideal, MonomialOrder order, const GroebnerOptions& options = {});

/// Fully reduced remainder of f modulo G.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis);

/// Every generator of `ideal` reduces to zero modulo `basis`.
bool contains(const GroebnerBasis& basis, const Ideal& ideal);

/// Every variable has a pure power among the leading monomials.
bool is_zero_dimensional(const GroebnerBasis& basis);

/// dim_k of the quotient. Throws PreconditionError for positive-dimensional input.
std::uint64_t count_standard_monomials(const GroebnerBasis& basis);

/// Number of standard monomials in each degree 0..max_degree. Works in any dimension.
std::vector<std::uint64_t> standard_monomial_counts_by_degree(const GroebnerBasis& basis, unsigned max_degree);

/// Explicit enumeration, lexicographic in exponents. Zero-dimensional input only.
std::vector<Monomial> standard_monomials(const GroebnerBasis& basis);

/// Largest variable subset containing the support of no leading monomial.
unsigned krull_dimension(const GroebnerBasis& basis);

/// S-pair certificate: every S-polynomial of the elements reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& basis);

/// Monic elements, no leading monomial dividing another, irreducible tails.
bool is_reduced(const GroebnerBasis& basis);

/// S(f, g) with monic normalization of both leading terms.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

}  // namespace hkm
