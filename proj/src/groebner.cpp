#include "hkm/groebner.hpp"

#include "hkm/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace hkm {

// ---------------------------------------------------------------------------
// Ideal

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
  if (!ring_) throw PreconditionError("ideal needs a ring");
  for (auto& g : generators) {
    if (g.ring() != ring_ && !(*g.ring() == *ring_)) throw RingMismatch("ideal generator from a different ring");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

Ideal Ideal::maximal(const RingPtr& ring) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ring->nvars(); ++i) gens.push_back(Polynomial::variable(ring, i));
  return Ideal(ring, std::move(gens));
}

bool Ideal::is_monomial() const noexcept {
  return std::all_of(generators_.begin(), generators_.end(), [](const Polynomial& g) { return g.size() == 1; });
}

bool Ideal::is_homogeneous() const noexcept {
  return std::all_of(generators_.begin(), generators_.end(), [](const Polynomial& g) { return g.is_homogeneous(); });
}

Ideal Ideal::operator+(const Ideal& other) const {
  if (!(*ring_ == *other.ring_)) throw RingMismatch("sum of ideals from different rings");
  std::vector<Polynomial> gens = generators_;
  for (const auto& g : other.generators_) gens.push_back(g.in_ring(ring_));
  return Ideal(ring_, std::move(gens));
}

Ideal Ideal::power(unsigned n) const {
  if (n == 0) return Ideal(ring_, {Polynomial::constant(ring_, 1)});
  std::vector<Polynomial> current = generators_;
  for (unsigned k = 1; k < n; ++k) {
    std::vector<Polynomial> next;
    for (const auto& a : current)
      for (const auto& b : generators_) {
        Polynomial prod = a * b;
        if (std::find(next.begin(), next.end(), prod) == next.end()) next.push_back(std::move(prod));
      }
    current = std::move(next);
  }
  return Ideal(ring_, std::move(current));
}

Ideal Ideal::in_ring(const RingPtr& other) const {
  std::vector<Polynomial> gens;
  for (const auto& g : generators_) gens.push_back(g.in_ring(other));
  return Ideal(other, std::move(gens));
}

bool operator==(const Ideal& a, const Ideal& b) {
  return *a.ring_ == *b.ring_ && a.generators_ == b.generators_;
}

// ---------------------------------------------------------------------------
// GroebnerBasis

GroebnerBasis::GroebnerBasis(RingPtr ring, std::vector<Polynomial> elements, GroebnerStats stats)
    : ring_(std::move(ring)), elements_(std::move(elements)), stats_(stats) {
  for (const auto& g : elements_) {
    if (g.is_zero()) throw PreconditionError("zero polynomial in a Groebner basis");
    if (!(*g.ring() == *ring_)) throw RingMismatch("basis element from a different ring");
    leading_.push_back(g.leading_monomial());
  }
}

bool GroebnerBasis::is_unit() const noexcept {
  return std::any_of(leading_.begin(), leading_.end(), [](const Monomial& m) { return m.is_one(); });
}

namespace {

std::vector<Term> shifted_tail(const Polynomial& g, const Monomial& m) {
  std::vector<Term> out;
  out.reserve(g.size());
  auto terms = g.terms();
  for (std::size_t i = 1; i < terms.size(); ++i) out.push_back(Term{terms[i].coeff, terms[i].mono * m});
  return out;
}

// Monic reducers with a flat leading-monomial table.
class Reducer {
 public:
  explicit Reducer(const PolyRing& ring) : ring_(ring) {}

  void add(const Polynomial* g) {
    reducers_.push_back(g);
    leads_.push_back(g->leading_monomial());
  }
  void clear() {
    reducers_.clear();
    leads_.clear();
  }

  const Polynomial* find(const Monomial& m) const noexcept {
    for (std::size_t i = 0; i < leads_.size(); ++i)
      if (leads_[i].divides(m)) return reducers_[i];
    return nullptr;
  }

  // Full reduction: no term of the result is divisible by a reducer lead.
  std::vector<Term> reduce(std::vector<Term> work) const {
    const std::uint32_t p = ring_.characteristic();
    std::vector<Term> remainder;
    std::size_t head = 0;
    while (head < work.size()) {
      const Term lt = work[head];
      const Polynomial* g = find(lt.mono);
      if (g == nullptr) {
        remainder.push_back(lt);
        ++head;
        continue;
      }
      const Monomial shift = lt.mono / g->leading_monomial();
      std::vector<Term> tail = shifted_tail(*g, shift);
      work = merge_terms(std::span<const Term>(work).subspan(head + 1), tail, sub_mod(0, lt.coeff, p), ring_);
      head = 0;
    }
    return remainder;
  }

 private:
  const PolyRing& ring_;
  std::vector<const Polynomial*> reducers_;
  std::vector<Monomial> leads_;
};

Polynomial monic_of(const RingPtr& ring, std::vector<Term> terms) {
  if (terms.empty()) return Polynomial(ring);
  const std::uint32_t p = ring->characteristic();
  const std::uint32_t inv = inv_mod(terms.front().coeff, p);
  for (auto& t : terms) t.coeff = mul_mod(t.coeff, inv, p);
  return Polynomial::from_canonical_terms(ring, std::move(terms));
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(RingPtr ring, const GroebnerOptions& options) : ring_(std::move(ring)), options_(options) {}

  GroebnerBasis run(const Ideal& ideal) {
    for (const auto& f : ideal.generators()) {
      std::vector<Term> terms(f.terms().begin(), f.terms().end());
      if (insert(reduce(std::move(terms)))) return unit_basis();
    }
    while (!pairs_.empty()) {
      const Pair pair = take_next_pair();
      if (++stats_.pairs_reduced > options_.max_pairs)
        throw ResourceError("Groebner work budget exceeded: more than " + std::to_string(options_.max_pairs) +
                            " S-pairs");
      std::vector<Term> s = s_poly_terms(polys_[pair.i], polys_[pair.j], pair.lcm);
      std::vector<Term> h = reduce(std::move(s));
      if (h.empty()) {
        ++stats_.zero_reductions;
        continue;
      }
      if (insert(std::move(h))) return unit_basis();
    }
    return finish();
  }

 private:
  std::vector<Term> reduce(std::vector<Term> terms) const {
    Reducer reducer(*ring_);
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) reducer.add(&polys_[k]);
    return reducer.reduce(std::move(terms));
  }

  std::vector<Term> s_poly_terms(const Polynomial& f, const Polynomial& g, const Monomial& lcm) const {
    const std::vector<Term> a = shifted_tail(f, lcm / f.leading_monomial());
    const std::vector<Term> b = shifted_tail(g, lcm / g.leading_monomial());
    return merge_terms(a, b, ring_->characteristic() - 1, *ring_);
  }

  bool less_pair(const Pair& a, const Pair& b) const {
    if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
    auto c = compare_unchecked(a.lcm, b.lcm, ring_->order());
    if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  Pair take_next_pair() {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k)
      if (less_pair(pairs_[k], pairs_[best])) best = k;
    Pair chosen = pairs_[best];
    pairs_[best] = pairs_.back();
    pairs_.pop_back();
    return chosen;
  }

  // Gebauer-Moeller update. Returns true when the new element is a unit.
  bool insert(std::vector<Term> terms) {
    if (terms.empty()) return false;
    Polynomial h = monic_of(ring_, std::move(terms));
    if (h.leading_monomial().is_one()) return true;
    if (polys_.size() + 1 > options_.max_basis_size)
      throw ResourceError("Groebner work budget exceeded: basis larger than " +
                          std::to_string(options_.max_basis_size));
    const std::size_t hi = polys_.size();
    const Monomial lh = h.leading_monomial();
    polys_.push_back(std::move(h));
    active_.push_back(true);

    struct Candidate {
      std::size_t j;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Candidate> c;
    for (std::size_t j = 0; j < hi; ++j) {
      if (!active_[j]) continue;
      const Monomial& lj = polys_[j].leading_monomial();
      c.push_back(Candidate{j, lh.lcm(lj), lh.coprime(lj)});
    }
    stats_.pairs_created += c.size();

    std::vector<Candidate> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      bool keep = c[k].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t m = k + 1; m < c.size() && keep; ++m)
          if (c[m].lcm.divides(c[k].lcm)) keep = false;
        for (std::size_t m = 0; m < d.size() && keep; ++m)
          if (d[m].lcm.divides(c[k].lcm)) keep = false;
      }
      if (keep)
        d.push_back(c[k]);
      else
        ++stats_.chain_skips;
    }

    std::erase_if(pairs_, [&](const Pair& pr) {
      if (!lh.divides(pr.lcm)) return false;
      const Monomial li = lh.lcm(polys_[pr.i].leading_monomial());
      const Monomial lj = lh.lcm(polys_[pr.j].leading_monomial());
      const bool drop = !(li == pr.lcm) && !(lj == pr.lcm);
      if (drop) ++stats_.chain_skips;
      return drop;
    });

    for (const auto& cand : d) {
      if (cand.coprime) {
        ++stats_.coprime_skips;
        continue;
      }
      pairs_.push_back(Pair{cand.j, hi, cand.lcm});
    }

    for (std::size_t j = 0; j < hi; ++j)
      if (active_[j] && lh.divides(polys_[j].leading_monomial())) active_[j] = false;
    return false;
  }

  GroebnerBasis unit_basis() const {
    return GroebnerBasis(ring_, {Polynomial::constant(ring_, 1)}, stats_);
  }

  // Inter-reduction: ascending leading monomials, each tail reduced by the smaller ones.
  GroebnerBasis finish() const {
    std::vector<const Polynomial*> minimal;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) minimal.push_back(&polys_[k]);
    const MonomialOrder ord = ring_->order();
    std::sort(minimal.begin(), minimal.end(), [ord](const Polynomial* a, const Polynomial* b) {
      return compare_unchecked(a->leading_monomial(), b->leading_monomial(), ord) == std::strong_ordering::less;
    });
    std::vector<Polynomial> reduced;
    reduced.reserve(minimal.size());
    for (const Polynomial* g : minimal) {
      Reducer reducer(*ring_);
      for (const auto& r : reduced) reducer.add(&r);
      std::vector<Term> tail(g->terms().begin() + 1, g->terms().end());
      std::vector<Term> terms{g->leading_term()};
      for (auto& t : reducer.reduce(std::move(tail))) terms.push_back(t);
      reduced.push_back(Polynomial::from_canonical_terms(ring_, std::move(terms)));
    }
    return GroebnerBasis(ring_, std::move(reduced), stats_);
  }

  RingPtr ring_;
  GroebnerOptions options_;
  std::vector<Polynomial> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  GroebnerStats stats_;
};

void check_same_ring(const Polynomial& f, const GroebnerBasis& basis) {
  if (!(*f.ring() == *basis.ring())) throw RingMismatch("polynomial and basis live in different rings or orders");
}

// Counts (or enumerates) exponent vectors outside the leading-monomial ideal.
// Candidates at level k are the leads whose first k coordinates are bounded by the prefix.
class StaircaseWalker {
 public:
  StaircaseWalker(const GroebnerBasis& basis, std::uint64_t node_cap) : n_(basis.ring()->nvars()), cap_(node_cap) {
    for (const auto& m : basis.leading_monomials()) leads_.push_back(&m);
  }

  std::uint64_t count_all() {
    if (n_ == 0) return leads_.empty() ? 1 : 0;
    return count_level(0, leads_);
  }

  std::vector<std::uint64_t> count_by_degree(unsigned max_degree) {
    std::vector<std::uint64_t> counts(max_degree + 1, 0);
    if (n_ == 0) {
      if (leads_.empty()) counts[0] = 1;
      return counts;
    }
    degree_level(0, leads_, 0, max_degree, counts);
    return counts;
  }

  std::vector<Monomial> enumerate() {
    std::vector<Monomial> out;
    std::vector<std::uint32_t> prefix(n_, 0);
    if (n_ == 0) {
      if (leads_.empty()) out.emplace_back(0);
      return out;
    }
    enumerate_level(0, leads_, prefix, out);
    return out;
  }

 private:
  using Leads = std::vector<const Monomial*>;

  void tick() {
    if (++nodes_ > cap_)
      throw ResourceError("standard monomial enumeration exceeded " + std::to_string(cap_) + " nodes");
  }

  bool vanishes_after(const Monomial& m, std::size_t level) const {
    for (std::size_t i = level + 1; i < n_; ++i)
      if (m[i] != 0) return false;
    return true;
  }

  // Candidates sorted by exponent at `level`; returns them for incremental admission.
  Leads sorted_at(const Leads& candidates, std::size_t level) const {
    Leads s = candidates;
    std::stable_sort(s.begin(), s.end(), [level](const Monomial* a, const Monomial* b) { return (*a)[level] < (*b)[level]; });
    return s;
  }

  std::uint64_t last_bound(const Leads& candidates) const {
    std::uint64_t bound = std::numeric_limits<std::uint64_t>::max();
    for (const Monomial* m : candidates) bound = std::min<std::uint64_t>(bound, (*m)[n_ - 1]);
    return bound;
  }

  std::uint64_t count_level(std::size_t level, const Leads& candidates) {
    tick();
    if (level + 1 == n_) {
      std::uint64_t bound = last_bound(candidates);
      if (bound == std::numeric_limits<std::uint64_t>::max())
        throw PreconditionError("ideal is not zero-dimensional");
      return bound;
    }
    const Leads order = sorted_at(candidates, level);
    Leads admitted;
    std::size_t next = 0;
    std::uint64_t total = 0;
    for (std::uint64_t a = 0;; ++a) {
      bool blocked = false;
      while (next < order.size() && (*order[next])[level] <= a) {
        if (vanishes_after(*order[next], level)) blocked = true;
        admitted.push_back(order[next++]);
      }
      if (blocked) break;
      if (next == order.size() && a > kMaxExponent) throw PreconditionError("ideal is not zero-dimensional");
      total += count_level(level + 1, admitted);
    }
    return total;
  }

  void degree_level(std::size_t level, const Leads& candidates, std::uint64_t degree, unsigned max_degree,
                    std::vector<std::uint64_t>& counts) {
    tick();
    if (level + 1 == n_) {
      const std::uint64_t bound = std::min<std::uint64_t>(last_bound(candidates), max_degree - degree + 1);
      for (std::uint64_t t = 0; t < bound; ++t) ++counts[degree + t];
      return;
    }
    const Leads order = sorted_at(candidates, level);
    Leads admitted;
    std::size_t next = 0;
    for (std::uint64_t a = 0; degree + a <= max_degree; ++a) {
      bool blocked = false;
      while (next < order.size() && (*order[next])[level] <= a) {
        if (vanishes_after(*order[next], level)) blocked = true;
        admitted.push_back(order[next++]);
      }
      if (blocked) break;
      degree_level(level + 1, admitted, degree + a, max_degree, counts);
    }
  }

  void enumerate_level(std::size_t level, const Leads& candidates, std::vector<std::uint32_t>& prefix,
                       std::vector<Monomial>& out) {
    tick();
    if (level + 1 == n_) {
      const std::uint64_t bound = last_bound(candidates);
      if (bound == std::numeric_limits<std::uint64_t>::max()) throw PreconditionError("ideal is not zero-dimensional");
      for (std::uint64_t t = 0; t < bound; ++t) {
        prefix[level] = static_cast<std::uint32_t>(t);
        out.emplace_back(std::span<const std::uint32_t>(prefix));
      }
      prefix[level] = 0;
      return;
    }
    const Leads order = sorted_at(candidates, level);
    Leads admitted;
    std::size_t next = 0;
    for (std::uint64_t a = 0;; ++a) {
      bool blocked = false;
      while (next < order.size() && (*order[next])[level] <= a) {
        if (vanishes_after(*order[next], level)) blocked = true;
        admitted.push_back(order[next++]);
      }
      if (blocked) break;
      if (next == order.size() && a > kMaxExponent) throw PreconditionError("ideal is not zero-dimensional");
      prefix[level] = static_cast<std::uint32_t>(a);
      enumerate_level(level + 1, admitted, prefix, out);
    }
    prefix[level] = 0;
  }

  std::size_t n_;
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
  Leads leads_;
};

constexpr std::uint64_t kWalkerNodeCap = 100'000'000;

}  // namespace

GroebnerBasis buchberger(const Ideal& ideal, MonomialOrder order, const GroebnerOptions& options) {
  RingPtr ring = ideal.ring()->order() == order ? ideal.ring() : ideal.ring()->with_order(order);
  Ideal local = ideal.ring() == ring ? ideal : ideal.in_ring(ring);
  return Buchberger(ring, options).run(local);
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis) {
  check_same_ring(f, basis);
  Reducer reducer(*basis.ring());
  for (const auto& g : basis.elements()) reducer.add(&g);
  std::vector<Term> terms(f.terms().begin(), f.terms().end());
  return Polynomial::from_canonical_terms(basis.ring(), reducer.reduce(std::move(terms)));
}

bool contains(const GroebnerBasis& basis, const Ideal& ideal) {
  for (const auto& g : ideal.generators())
    if (!normal_form(g.in_ring(basis.ring()), basis).is_zero()) return false;
  return true;
}

bool is_zero_dimensional(const GroebnerBasis& basis) {
  if (basis.is_unit()) return true;
  const std::size_t n = basis.ring()->nvars();
  std::vector<bool> seen(n, false);
  for (const auto& m : basis.leading_monomials()) {
    const std::size_t v = m.pure_power_variable();
    if (v < n) seen[v] = true;
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::uint64_t count_standard_monomials(const GroebnerBasis& basis) {
  if (!is_zero_dimensional(basis))
    throw PreconditionError("standard monomial count requested for a positive-dimensional ideal");
  return StaircaseWalker(basis, kWalkerNodeCap).count_all();
}

std::vector<std::uint64_t> standard_monomial_counts_by_degree(const GroebnerBasis& basis, unsigned max_degree) {
  return StaircaseWalker(basis, kWalkerNodeCap).count_by_degree(max_degree);
}

std::vector<Monomial> standard_monomials(const GroebnerBasis& basis) {
  if (!is_zero_dimensional(basis))
    throw PreconditionError("standard monomials requested for a positive-dimensional ideal");
  return StaircaseWalker(basis, kWalkerNodeCap).enumerate();
}

unsigned krull_dimension(const GroebnerBasis& basis) {
  if (basis.is_unit()) return 0;
  const std::size_t n = basis.ring()->nvars();
  std::vector<std::uint32_t> supports;
  for (const auto& m : basis.leading_monomials()) supports.push_back(m.support());
  unsigned best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto size = static_cast<unsigned>(std::popcount(mask));
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(),
                                    [mask](std::uint32_t s) { return (s & ~mask) == 0; });
    if (independent) best = size;
  }
  return best;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  if (!(*f.ring() == *g.ring())) throw RingMismatch("S-polynomial of polynomials from different rings");
  const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  const Polynomial a = f.monic().mul_term(1, l / f.leading_monomial());
  const Polynomial b = g.monic().mul_term(1, l / g.leading_monomial());
  return a - b;
}

bool satisfies_buchberger_criterion(const GroebnerBasis& basis) {
  auto elems = basis.elements();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (!normal_form(s_polynomial(elems[i], elems[j]), basis).is_zero()) return false;
  return true;
}

bool is_reduced(const GroebnerBasis& basis) {
  auto elems = basis.elements();
  auto leads = basis.leading_monomials();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i].leading_coeff() != 1) return false;
    for (std::size_t t = 0; t < elems[i].size(); ++t) {
      const Monomial& m = elems[i].terms()[t].mono;
      for (std::size_t j = 0; j < leads.size(); ++j) {
        if (t == 0 && j == i) continue;
        if (leads[j].divides(m)) return false;
      }
    }
  }
  return true;
}

}  // namespace hkm
