#include "hkm/polynomial.hpp"

#include "hkm/errors.hpp"

#include <algorithm>
#include <set>

namespace hkm {

PolyRing::PolyRing(std::uint32_t p, std::vector<std::string> vars, MonomialOrder order)
    : p_(p), vars_(std::move(vars)), order_(order) {
  require_prime_modulus(p_);
  if (vars_.size() > kMaxVars)
    throw ValidationError("at most " + std::to_string(kMaxVars) + " variables are supported");
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.empty()) throw ValidationError("empty variable name");
    if (!seen.insert(v).second) throw ValidationError("duplicate variable '" + v + "'");
  }
}

RingPtr PolyRing::make(std::uint32_t p, std::vector<std::string> vars, MonomialOrder order) {
  return std::make_shared<const PolyRing>(p, std::move(vars), order);
}

std::size_t PolyRing::index_of(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return vars_.size();
}

RingPtr PolyRing::with_order(MonomialOrder order) const { return make(p_, vars_, order); }

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw PreconditionError("polynomial needs a ring");
}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : Polynomial(std::move(ring)) {
  terms_ = std::move(terms);
  for (auto& t : terms_) {
    if (t.mono.size() != ring_->nvars()) throw RingMismatch("term has wrong number of variables");
    t.coeff %= ring_->characteristic();
  }
  canonicalize();
}

Polynomial Polynomial::constant(RingPtr ring, std::int64_t value) {
  const std::size_t n = ring->nvars();
  const std::uint32_t c = reduce_mod(value, ring->characteristic());
  return Polynomial(std::move(ring), {Term{c, Monomial(n)}});
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  Monomial m = Monomial::variable_power(ring->nvars(), index, 1);
  return Polynomial(std::move(ring), {Term{1, m}});
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, std::uint32_t coeff) {
  return Polynomial(std::move(ring), {Term{coeff, m}});
}

Polynomial Polynomial::from_canonical_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial f(std::move(ring));
  f.terms_ = std::move(terms);
  return f;
}

void Polynomial::canonicalize() {
  const MonomialOrder ord = ring_->order();
  std::sort(terms_.begin(), terms_.end(), [ord](const Term& a, const Term& b) {
    return compare_unchecked(a.mono, b.mono, ord) == std::strong_ordering::greater;
  });
  const std::uint32_t p = ring_->characteristic();
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().mono == t.mono)
      merged.back().coeff = add_mod(merged.back().coeff, t.coeff, p);
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
  terms_ = std::move(merged);
}

bool Polynomial::is_canonical() const noexcept {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff == 0 || terms_[i].coeff >= ring_->characteristic()) return false;
    if (terms_[i].mono.size() != ring_->nvars()) return false;
    if (i > 0 && compare_unchecked(terms_[i - 1].mono, terms_[i].mono, ring_->order()) !=
                     std::strong_ordering::greater)
      return false;
  }
  return true;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw PreconditionError("zero polynomial has no leading term");
  return terms_.front();
}

FieldScalar Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return FieldScalar(t.coeff, ring_->characteristic());
  return FieldScalar(0, ring_->characteristic());
}

std::uint32_t Polynomial::total_degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

bool Polynomial::is_homogeneous() const noexcept {
  for (const auto& t : terms_)
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  return true;
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (ring_ != o.ring_ && !(*ring_ == *o.ring_)) throw RingMismatch("polynomials from different rings");
}

std::vector<Term> merge_terms(std::span<const Term> a, std::span<const Term> b, std::uint32_t scale,
                        const PolyRing& ring) {
  const std::uint32_t p = ring.characteristic();
  const MonomialOrder ord = ring.order();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = compare_unchecked(a[i].mono, b[j].mono, ord);
    if (c == std::strong_ordering::greater) {
      out.push_back(a[i++]);
    } else if (c == std::strong_ordering::less) {
      out.push_back(Term{mul_mod(b[j].coeff, scale, p), b[j].mono});
      ++j;
    } else {
      std::uint32_t s = add_mod(a[i].coeff, mul_mod(b[j].coeff, scale, p), p);
      if (s != 0) out.push_back(Term{s, a[i].mono});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(Term{mul_mod(b[j].coeff, scale, p), b[j].mono});
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_ring(o);
  Polynomial r(ring_);
  r.terms_ = merge_terms(terms_, o.terms_, 1, *ring_);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_ring(o);
  Polynomial r(ring_);
  r.terms_ = merge_terms(terms_, o.terms_, ring_->characteristic() - 1, *ring_);
  return r;
}

Polynomial Polynomial::operator-() const { return scaled(ring_->characteristic() - 1); }

Polynomial Polynomial::scaled(std::uint32_t c) const {
  Polynomial r(ring_);
  c %= ring_->characteristic();
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{mul_mod(t.coeff, c, ring_->characteristic()), t.mono});
  return r;
}

Polynomial Polynomial::mul_term(std::uint32_t c, const Monomial& m) const {
  Polynomial r(ring_);
  c %= ring_->characteristic();
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  // multiplicative orders keep the term sequence sorted
  for (const auto& t : terms_) r.terms_.push_back(Term{mul_mod(t.coeff, c, ring_->characteristic()), t.mono * m});
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_ring(o);
  std::vector<Term> products;
  products.reserve(terms_.size() * o.terms_.size());
  const std::uint32_t p = ring_->characteristic();
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) products.push_back(Term{mul_mod(a.coeff, b.coeff, p), a.mono * b.mono});
  return Polynomial(ring_, std::move(products));
}

Polynomial Polynomial::pow(std::uint64_t k) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(inv_mod(leading_coeff(), ring_->characteristic()));
}

Polynomial Polynomial::frobenius(std::uint32_t q) const {
  const std::uint32_t p = ring_->characteristic();
  std::uint64_t r = q;
  while (r > 1 && r % p == 0) r /= p;
  if (q == 0 || r != 1)
    throw PreconditionError(std::to_string(q) + " is not a power of the characteristic " + std::to_string(p));
  std::vector<Term> out;
  out.reserve(terms_.size());
  // c^q = c in F_p
  for (const auto& t : terms_) out.push_back(Term{t.coeff, t.mono.pow(q)});
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::in_ring(RingPtr other) const {
  if (other->characteristic() != ring_->characteristic() || other->variables() != ring_->variables())
    throw RingMismatch("cannot move polynomial between rings with different fields or variables");
  return Polynomial(std::move(other), terms_);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return (a.ring_ == b.ring_ || *a.ring_ == *b.ring_) && a.terms_ == b.terms_;
}

Polynomial sub_mul_term(const Polynomial& f, std::uint32_t c, const Monomial& m, const Polynomial& g) {
  const PolyRing& ring = *f.ring();
  const std::uint32_t p = ring.characteristic();
  std::vector<Term> shifted;
  shifted.reserve(g.size());
  for (const auto& t : g.terms()) shifted.push_back(Term{t.coeff, t.mono * m});
  Polynomial r(f.ring());
  r.terms_ = merge_terms(f.terms(), shifted, sub_mod(0, c % p, p), ring);
  return r;
}

std::string format(const Monomial& m, const PolyRing& ring) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.variables()[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string format(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    if (t.mono.is_one()) {
      out += std::to_string(t.coeff);
    } else {
      if (t.coeff != 1) out += std::to_string(t.coeff) + "*";
      out += format(t.mono, *f.ring());
    }
  }
  return out;
}

}  // namespace hkm
