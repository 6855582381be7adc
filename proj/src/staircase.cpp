#include "hkm/staircase.hpp"

#include "hkm/errors.hpp"

#include <algorithm>
#include <limits>

namespace hkm {

namespace {

bool dominates(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

// Index of the variable of a pure power, or size() when not a pure power.
std::size_t pure_variable(const ExponentVector& g) {
  std::size_t found = g.size();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 0) continue;
    if (found != g.size()) return g.size();
    found = i;
  }
  return found;
}

}  // namespace

StaircaseRegion::StaircaseRegion(std::vector<ExponentVector> generators) {
  if (generators.empty()) throw PreconditionError("monomial ideal has no generators");
  const std::size_t n = generators.front().size();
  for (const auto& g : generators)
    if (g.size() != n) throw PreconditionError("exponent vectors of unequal length");

  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < generators.size() && !redundant; ++j)
      redundant = i != j && dominates(generators[i], generators[j]);
    if (!redundant) generators_.push_back(generators[i]);
  }

  if (std::any_of(generators_.begin(), generators_.end(),
                  [](const ExponentVector& g) { return std::all_of(g.begin(), g.end(), [](auto e) { return e == 0; }); }))
    throw PreconditionError("monomial ideal is the unit ideal");

  box_.assign(n, 0);
  for (const auto& g : generators_) {
    const std::size_t v = pure_variable(g);
    if (v < n) box_[v] = g[v];
  }
  for (std::size_t i = 0; i < n; ++i)
    if (box_[i] == 0) throw PreconditionError("monomial ideal is not m-primary: no pure power of variable " + std::to_string(i));
}

StaircaseRegion StaircaseRegion::from_ideal(const Ideal& ideal) {
  std::vector<ExponentVector> gens;
  for (const auto& g : ideal.generators()) {
    if (g.size() != 1) throw PreconditionError("staircase needs a monomial ideal");
    const Monomial& m = g.leading_monomial();
    ExponentVector v(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) v[i] = m[i];
    gens.push_back(std::move(v));
  }
  return StaircaseRegion(std::move(gens));
}

Rational exact_hk_monomial(const StaircaseRegion& region) {
  const std::size_t n = region.nvars();
  const ExponentVector& box = region.box();
  // Pure powers meet the box only on its boundary, so they never contribute.
  std::vector<const ExponentVector*> inner;
  for (const auto& g : region.generators())
    if (pure_variable(g) == n) inner.push_back(&g);
  if (inner.size() > kMaxStaircaseGenerators)
    throw ResourceError("inclusion-exclusion over " + std::to_string(inner.size()) + " generators exceeds the cap of " +
                        std::to_string(kMaxStaircaseGenerators));

  BigInt volume = 1;
  for (auto a : box) volume *= a;

  const std::uint64_t subsets = std::uint64_t{1} << inner.size();
  ExponentVector join(n);
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    std::fill(join.begin(), join.end(), 0);
    int parity = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      ++parity;
      for (std::size_t j = 0; j < n; ++j) join[j] = std::max(join[j], (*inner[i])[j]);
    }
    BigInt part = 1;
    for (std::size_t j = 0; j < n && part != 0; ++j) part *= box[j] > join[j] ? box[j] - join[j] : 0;
    // union volume enters with the opposite sign
    if (parity % 2 == 1)
      volume -= part;
    else
      volume += part;
  }
  return Rational(volume);
}

std::uint64_t brute_force_colength(const StaircaseRegion& region, std::uint64_t q) {
  if (q < 1) throw PreconditionError("scaling q must be positive");
  const std::size_t n = region.nvars();
  std::vector<std::uint64_t> bounds(n);
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < n; ++i) {
    bounds[i] = region.box()[i] * q;
    if (points > kMaxLatticePoints / bounds[i])
      throw ResourceError("lattice box exceeds " + std::to_string(kMaxLatticePoints) + " points");
    points *= bounds[i];
  }
  std::vector<std::vector<std::uint64_t>> scaled;
  for (const auto& g : region.generators()) {
    std::vector<std::uint64_t> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = g[i] * q;
    scaled.push_back(std::move(s));
  }

  std::vector<std::uint64_t> point(n, 0);
  std::uint64_t count = 0;
  for (std::uint64_t visited = 0; visited < points; ++visited) {
    const bool covered = std::any_of(scaled.begin(), scaled.end(), [&](const std::vector<std::uint64_t>& g) {
      for (std::size_t i = 0; i < n; ++i)
        if (point[i] < g[i]) return false;
      return true;
    });
    if (!covered) ++count;
    for (std::size_t i = 0; i < n; ++i) {
      if (++point[i] < bounds[i]) break;
      point[i] = 0;
    }
  }
  return count;
}

}  // namespace hkm
