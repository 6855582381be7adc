#include "hkm/hk_engine.hpp"

#include "hkm/errors.hpp"

#include <algorithm>
#include <future>

namespace hkm {

bool char_restriction_allows(const std::string& token, std::uint32_t p) {
  if (token == "odd") return p % 2 == 1;
  auto number = [&](std::size_t offset) {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(token.substr(offset), &used);
      if (offset + used != token.size()) throw ValidationError("");
      return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      throw ValidationError("unknown characteristic restriction '" + token + "'");
    }
  };
  if (token.rfind("p!=", 0) == 0) return p != number(3);
  if (token.rfind("p>", 0) == 0) return p > number(2);
  if (token.rfind("p=", 0) == 0) return p == number(2);
  throw ValidationError("unknown characteristic restriction '" + token + "'");
}

RingPresentation::RingPresentation(RingPtr ring, Ideal defining_ideal, RingMetadata metadata,
                                   const GroebnerOptions& options)
    : ring_(std::move(ring)),
      defining_(defining_ideal.in_ring(ring_)),
      metadata_(std::move(metadata)),
      basis_(buchberger(defining_, ring_->order(), options)),
      dimension_(krull_dimension(basis_)) {
  for (const auto& token : metadata_.char_restrictions)
    if (!char_restriction_allows(token, ring_->characteristic()))
      throw ValidationError("ring '" + metadata_.name + "' requires " + token + " but p = " +
                            std::to_string(ring_->characteristic()));
  if (metadata_.graded && !defining_.is_homogeneous())
    throw ValidationError("ring '" + metadata_.name + "' is declared graded but a relation is not homogeneous");
  if (basis_.is_unit()) throw ValidationError("ring '" + metadata_.name + "' is the zero ring");
  if (metadata_.expected_dimension && *metadata_.expected_dimension != dimension_)
    throw ValidationError("ring '" + metadata_.name + "' declares dimension " +
                          std::to_string(*metadata_.expected_dimension) + " but the computed dimension is " +
                          std::to_string(dimension_));
}

std::string to_string(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::exact_volume: return "exact-volume";
    case EstimateMethod::richardson: return "richardson";
    case EstimateMethod::leading_difference: return "leading-difference";
  }
  return "?";
}

namespace {

bool is_power_of(std::uint64_t q, std::uint32_t p) {
  if (q == 0) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

std::uint64_t checked_power(std::uint64_t base, unsigned exponent) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (r > kMaxExponent) throw ExponentOverflow("q = p^e exceeds the exponent width");
    r *= base;
  }
  return r;
}

ColengthResult compute_colength(const RingPresentation& ring, const Ideal& ideal, const EngineOptions& options) {
  const Ideal local = ideal.in_ring(ring.ring());
  GroebnerBasis gb = buchberger(ring.defining_ideal() + local, options.order, options.groebner);
  if (!is_zero_dimensional(gb)) throw PreconditionError("ideal is not m-primary in '" + ring.name() + "'");
  if (gb.is_unit()) throw PreconditionError("ideal is the unit ideal in '" + ring.name() + "'");
  return ColengthResult{count_standard_monomials(gb), gb.size(), gb.stats().pairs_reduced};
}

template <typename Fn>
auto annotate(const std::string& where, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ResourceError& e) {
    throw ResourceError(where + ": " + e.what());
  } catch (const ExponentOverflow& e) {
    throw ExponentOverflow(where + ": " + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(where + ": " + e.what());
  }
}

Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

// Leading coefficient of the fit through (q_i, lambda_i) on the given power basis (first entry q^d).
Rational fit_leading(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& points,
                     const std::vector<unsigned>& powers) {
  std::vector<std::vector<Rational>> matrix;
  std::vector<Rational> rhs;
  for (const auto& [q, lambda] : points) {
    std::vector<Rational> row;
    for (unsigned k : powers) row.push_back(rational_pow(Rational(q), k));
    matrix.push_back(std::move(row));
    rhs.emplace_back(lambda);
  }
  return solve_linear_system(std::move(matrix), std::move(rhs)).front();
}

}  // namespace

Ideal frobenius_power(const Ideal& ideal, std::uint64_t q) {
  const std::uint32_t p = ideal.ring()->characteristic();
  if (!is_power_of(q, p))
    throw PreconditionError(std::to_string(q) + " is not a power of the characteristic " + std::to_string(p));
  if (q > kMaxExponent) throw ExponentOverflow("Frobenius exponent " + std::to_string(q) + " exceeds the exponent width");
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.frobenius(static_cast<std::uint32_t>(q)));
  return Ideal(ideal.ring(), std::move(gens));
}

ColengthResult colength(const RingPresentation& ring, const Ideal& ideal, const EngineOptions& options) {
  if (options.source) return options.source(ring, ideal);
  return compute_colength(ring, ideal, options);
}

HKFunction hk_function(const RingPresentation& ring, const Ideal& ideal, unsigned e_max,
                       const EngineOptions& options, std::string ideal_label) {
  if (e_max < 1) throw PreconditionError("e_max must be at least 1");
  const unsigned d = ring.dimension();
  const std::uint32_t p = ring.characteristic();

  HKFunction fn;
  fn.ring_name = ring.name();
  fn.ideal_label = std::move(ideal_label);
  fn.dimension = d;
  fn.base_colength = annotate("e=0 (q=1)", [&] { return colength(ring, ideal, options).colength; });

  auto sample = [&](unsigned e) {
    const std::string where = "e=" + std::to_string(e);
    return annotate(where, [&] {
      const std::uint64_t q = checked_power(p, e);
      const std::uint64_t lambda = colength(ring, frobenius_power(ideal, q), options).colength;
      Rational normalized(BigInt(lambda), ipow(BigInt(q), d));
      return HKSample{e, q, lambda, normalized};
    });
  };

  if (options.parallel_samples) {
    std::vector<std::future<HKSample>> futures;
    for (unsigned e = 1; e <= e_max; ++e) futures.push_back(std::async(std::launch::async, sample, e));
    for (auto& f : futures) fn.samples.push_back(f.get());
  } else {
    for (unsigned e = 1; e <= e_max; ++e) fn.samples.push_back(sample(e));
  }
  return fn;
}

MultiplicityEstimate hk_estimate(const HKFunction& function, unsigned dimension) {
  const auto& samples = function.samples;
  if (samples.size() < 2) throw PreconditionError("HK estimate needs at least two samples");
  const unsigned d = dimension;
  const std::size_t n = samples.size();
  const std::size_t w = std::min<std::size_t>(d + 1, n);

  std::vector<unsigned> powers{d};
  if (w >= 2) {
    for (std::size_t k = 1; k + 1 < w; ++k) powers.push_back(d - static_cast<unsigned>(k));
    powers.push_back(0);
  }
  if (d == 0) powers = {0};

  // index -1 is the e = 0 point (q = 1, lambda(R/I))
  auto point = [&](std::ptrdiff_t i) -> std::pair<std::uint64_t, std::uint64_t> {
    if (i < 0) return {1, function.base_colength};
    return {samples[static_cast<std::size_t>(i)].q, samples[static_cast<std::size_t>(i)].colength};
  };
  auto window = [&](std::ptrdiff_t end) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pts;
    for (std::ptrdiff_t i = end - static_cast<std::ptrdiff_t>(powers.size()); i < end; ++i) pts.push_back(point(i));
    return pts;
  };

  const auto last = static_cast<std::ptrdiff_t>(n);
  Rational current = fit_leading(window(last), powers);
  Rational previous = fit_leading(window(last - 1), powers);
  return MultiplicityEstimate{current, EstimateMethod::richardson, abs(current - previous),
                              static_cast<unsigned>(powers.size())};
}

namespace {

MultiplicityEstimate leading_difference(const std::vector<BigInt>& lambda, unsigned d) {
  // lambda[n] = lambda(R/I^n), n = 0..n_max
  auto diff = [&](std::size_t at) {
    BigInt acc = 0;
    BigInt binom = 1;
    for (unsigned k = 0; k <= d; ++k) {
      const BigInt term = binom * lambda[at - k];
      acc += (k % 2 == 0) ? term : BigInt(-term);
      binom = binom * (d - k) / (k + 1);
    }
    return acc;
  };
  const std::size_t top = lambda.size() - 1;
  const BigInt last = diff(top);
  const BigInt before = diff(top - 1);
  Rational gap = abs(Rational(last - before));
  return MultiplicityEstimate{Rational(last), EstimateMethod::leading_difference, gap,
                              static_cast<unsigned>(lambda.size())};
}

}  // namespace

MultiplicityEstimate hs_multiplicity(const RingPresentation& ring, unsigned n_max) {
  if (!ring.metadata().graded) throw PreconditionError("Hilbert-Samuel via graded pieces requires a graded ring");
  const unsigned d = ring.dimension();
  if (n_max <= d) throw PreconditionError("n_max must exceed the dimension");
  std::vector<std::uint64_t> hilbert = standard_monomial_counts_by_degree(ring.defining_basis(), n_max);
  std::vector<BigInt> lambda{0};
  BigInt running = 0;
  for (unsigned n = 1; n <= n_max; ++n) {
    running += hilbert[n - 1];
    lambda.push_back(running);
  }
  return leading_difference(lambda, d);
}

MultiplicityEstimate hs_multiplicity(const RingPresentation& ring, const Ideal& ideal, unsigned n_max,
                                     const EngineOptions& options) {
  const unsigned d = ring.dimension();
  if (n_max <= d) throw PreconditionError("n_max must exceed the dimension");
  std::vector<BigInt> lambda{0};
  for (unsigned n = 1; n <= n_max; ++n) {
    const std::uint64_t value =
        annotate("n=" + std::to_string(n), [&] { return colength(ring, ideal.power(n), options).colength; });
    lambda.emplace_back(value);
  }
  return leading_difference(lambda, d);
}

bool is_regular(const RingPresentation& ring, const EngineOptions& options) {
  const std::uint32_t p = ring.characteristic();
  const std::uint64_t lambda = colength(ring, frobenius_power(ring.maximal_ideal(), p), options).colength;
  return BigInt(lambda) == ipow(BigInt(p), ring.dimension());
}

std::vector<Rational> solve_linear_system(std::vector<std::vector<Rational>> matrix, std::vector<Rational> rhs) {
  const std::size_t n = matrix.size();
  for (const auto& row : matrix)
    if (row.size() != n) throw PreconditionError("linear system is not square");
  if (rhs.size() != n) throw PreconditionError("right-hand side has the wrong length");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && matrix[pivot][c] == 0) ++pivot;
    if (pivot == n) throw PreconditionError("singular linear system");
    std::swap(matrix[pivot], matrix[c]);
    std::swap(rhs[pivot], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || matrix[r][c] == 0) continue;
      const Rational f = matrix[r][c] / matrix[c][c];
      for (std::size_t k = c; k < n; ++k) matrix[r][k] -= f * matrix[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / matrix[i][i];
  return x;
}

}  // namespace hkm
