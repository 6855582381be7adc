#pragma once

// Shared generators and independent oracles for the test suites. Nothing in
// here calls into the Groebner engine.

#include "hkm/field.hpp"
#include "hkm/groebner.hpp"
#include "hkm/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace hkm::testing {

inline Monomial random_monomial(std::mt19937_64& rng, std::size_t nvars, unsigned max_exp) {
  std::uniform_int_distribution<std::uint32_t> dist(0, max_exp);
  std::vector<std::uint32_t> e(nvars);
  for (auto& x : e) x = dist(rng);
  return Monomial(std::span<const std::uint32_t>(e));
}

inline Polynomial random_polynomial(std::mt19937_64& rng, const RingPtr& ring, std::size_t max_terms,
                                    unsigned max_exp) {
  std::uniform_int_distribution<std::size_t> count(0, max_terms);
  std::uniform_int_distribution<std::uint32_t> coeff(0, ring->characteristic() - 1);
  std::vector<Term> terms;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) terms.push_back(Term{coeff(rng), random_monomial(rng, ring->nvars(), max_exp)});
  return Polynomial(ring, std::move(terms));
}

/// Textbook Buchberger: every pair, no criteria, naive division. Returns a reduced basis.
inline std::vector<Polynomial> textbook_groebner(const std::vector<Polynomial>& input) {
  std::vector<Polynomial> g;
  for (const auto& f : input)
    if (!f.is_zero()) g.push_back(f.monic());
  auto divide = [](Polynomial f, const std::vector<Polynomial>& basis) {
    const RingPtr& ring = f.ring();
    Polynomial r(ring);
    while (!f.is_zero()) {
      const Term lt = f.leading_term();
      bool reduced = false;
      for (const auto& b : basis) {
        if (b.leading_monomial().divides(lt.mono)) {
          Polynomial quotient_term = Polynomial::monomial(ring, lt.mono / b.leading_monomial(),
                                                          mul_mod(lt.coeff, inv_mod(b.leading_coeff(), ring->characteristic()),
                                                                  ring->characteristic()));
          f = f - quotient_term * b;
          reduced = true;
          break;
        }
      }
      if (!reduced) {
        Polynomial lead = Polynomial::monomial(ring, lt.mono, lt.coeff);
        r = r + lead;
        f = f - lead;
      }
    }
    return r;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < g.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < g.size() && !changed; ++j) {
        Polynomial s = s_polynomial(g[i], g[j]);
        Polynomial r = divide(s, g);
        if (!r.is_zero()) {
          g.push_back(r.monic());
          changed = true;
        }
      }
  }
  // minimalize
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      const bool divides = g[j].leading_monomial().divides(g[i].leading_monomial());
      if (divides && (!(g[j].leading_monomial() == g[i].leading_monomial()) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  // reduce tails
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const Polynomial lead = Polynomial::monomial(minimal[i].ring(), minimal[i].leading_monomial(), 1);
    reduced.push_back(lead + divide(minimal[i] - lead, others));
  }
  const MonomialOrder ord = input.front().ring()->order();
  std::sort(reduced.begin(), reduced.end(), [ord](const Polynomial& a, const Polynomial& b) {
    return compare(a.leading_monomial(), b.leading_monomial(), ord) == std::strong_ordering::less;
  });
  return reduced;
}

/// Rank of a dense matrix over F_p by Gaussian elimination.
inline std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const std::uint32_t inv = inv_mod(rows[rank][c], p);
    for (auto& x : rows[rank]) x = mul_mod(x, inv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::uint32_t f = rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] = sub_mod(rows[r][k], mul_mod(f, rows[rank][k], p), p);
    }
    ++rank;
  }
  return rank;
}

inline void monomials_of_degree(std::size_t nvars, unsigned degree, std::vector<std::uint32_t>& prefix,
                                std::vector<Monomial>& out) {
  if (prefix.size() + 1 == nvars) {
    prefix.push_back(degree);
    out.emplace_back(std::span<const std::uint32_t>(prefix));
    prefix.pop_back();
    return;
  }
  for (unsigned a = 0; a <= degree; ++a) {
    prefix.push_back(degree - a);
    monomials_of_degree(nvars, a, prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> prefix;
  if (nvars == 0) return out;
  monomials_of_degree(nvars, degree, prefix, out);
  return out;
}

/// dim_k of S/I for a homogeneous ideal, degree by degree: the degree-t part of I is
/// spanned by monomial multiples of generators. Stops after `quiet` consecutive zero degrees.
inline std::uint64_t linear_algebra_colength(const std::vector<Polynomial>& gens, unsigned max_degree) {
  const RingPtr& ring = gens.front().ring();
  const std::size_t n = ring->nvars();
  const std::uint32_t p = ring->characteristic();
  std::uint64_t total = 0;
  for (unsigned t = 0; t <= max_degree; ++t) {
    std::vector<Monomial> basis = monomials_of_degree(n, t);
    std::vector<std::vector<std::uint32_t>> rows;
    for (const auto& g : gens) {
      const std::uint32_t dg = g.total_degree();
      if (dg > t) continue;
      for (const auto& m : monomials_of_degree(n, t - dg)) {
        std::vector<std::uint32_t> row(basis.size(), 0);
        for (const auto& term : g.terms()) {
          const Monomial prod = term.mono * m;
          auto it = std::find(basis.begin(), basis.end(), prod);
          row[static_cast<std::size_t>(it - basis.begin())] = term.coeff % p;
        }
        rows.push_back(std::move(row));
      }
    }
    total += basis.size() - rank_mod_p(std::move(rows), p);
  }
  return total;
}

/// Lattice points in the box [0, bounds) avoided by every monomial in `ideal`.
inline std::uint64_t lattice_count(const std::vector<Monomial>& ideal, const std::vector<std::uint32_t>& bounds) {
  const std::size_t n = bounds.size();
  std::vector<std::uint32_t> point(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    Monomial m{std::span<const std::uint32_t>(point)};
    if (std::none_of(ideal.begin(), ideal.end(), [&](const Monomial& g) { return g.divides(m); })) ++count;
    std::size_t i = 0;
    while (i < n && ++point[i] == bounds[i]) point[i++] = 0;
    if (i == n) break;
  }
  return count;
}

}  // namespace hkm::testing
