#pragma once

#include "hkm/groebner.hpp"
#include "hkm/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hkm {

/// Declared facts about a ring that the engine does not compute.
struct RingMetadata {
  std::string name;
  std::optional<unsigned> expected_dimension;
  bool graded = true;
  bool unmixed = false;
  bool cm_image = false;
  std::optional<bool> cohen_macaulay;
  std::optional<bool> f_rational;
  std::optional<Rational> known_e_hk;
  std::string known_e_hk_source;
  /// Tokens such as "odd", "p!=3"; see char_restriction_allows().
  std::vector<std::string> char_restrictions;

  friend bool operator==(const RingMetadata&, const RingMetadata&) = default;
};

/// True when p satisfies a restriction token: "odd", "p!=N", "p=N", "p>N".
/// Throws ValidationError for unknown tokens.
bool char_restriction_allows(const std::string& token, std::uint32_t p);

/// A quotient S/J of a polynomial ring over F_p with declared metadata.
///
/// Construction validates homogeneity (when graded), the characteristic
/// restrictions and the declared dimension against the combinatorial
/// dimension of in(J).
class RingPresentation {
 public:
  RingPresentation(RingPtr ring, Ideal defining_ideal, RingMetadata metadata,
                   const GroebnerOptions& options = {});

  const RingPtr& ring() const noexcept { return ring_; }
  std::uint32_t characteristic() const noexcept { return ring_->characteristic(); }
  const Ideal& defining_ideal() const noexcept { return defining_; }
  const GroebnerBasis& defining_basis() const noexcept { return basis_; }
  const RingMetadata& metadata() const noexcept { return metadata_; }
  const std::string& name() const noexcept { return metadata_.name; }
  unsigned dimension() const noexcept { return dimension_; }

  Ideal maximal_ideal() const { return Ideal::maximal(ring_); }

 private:
  RingPtr ring_;
  Ideal defining_;
  RingMetadata metadata_;
  GroebnerBasis basis_;
  unsigned dimension_;
};

struct ColengthResult {
  std::uint64_t colength = 0;
  std::size_t basis_size = 0;
  std::uint64_t pairs_reduced = 0;

  friend bool operator==(const ColengthResult&, const ColengthResult&) = default;
};

/// Pluggable colength evaluation; the default computes directly.
using ColengthSource = std::function<ColengthResult(const RingPresentation&, const Ideal&)>;

struct EngineOptions {
  MonomialOrder order = MonomialOrder::grevlex;
  GroebnerOptions groebner;
  ColengthSource source;  // empty: compute directly
  bool parallel_samples = false;
};

struct HKSample {
  unsigned e;
  std::uint64_t q;
  std::uint64_t colength;
  Rational normalized;
};

struct HKFunction {
  std::string ring_name;
  std::string ideal_label;
  unsigned dimension = 0;
  /// lambda(R/I), the e = 0 value of the sequence.
  std::uint64_t base_colength = 0;
  std::vector<HKSample> samples;
};

enum class EstimateMethod { exact_volume, richardson, leading_difference };

std::string to_string(EstimateMethod method);

struct MultiplicityEstimate {
  Rational value;
  EstimateMethod method = EstimateMethod::richardson;
  Rational uncertainty;
  unsigned samples_used = 0;

  Rational lower() const { return value - uncertainty; }
  Rational upper() const { return value + uncertainty; }
  static MultiplicityEstimate exact(Rational v, EstimateMethod method, unsigned samples = 0) {
    return MultiplicityEstimate{std::move(v), method, Rational(0), samples};
  }
};

/// Generators raised to the q-th power. q must be a power of the characteristic.
Ideal frobenius_power(const Ideal& ideal, std::uint64_t q);

/// lambda(R/I) computed as dim_k S/(J + I). Throws PreconditionError unless
/// J + I is zero-dimensional and proper.
ColengthResult colength(const RingPresentation& ring, const Ideal& ideal, const EngineOptions& options = {});

/// Samples e = 1..e_max of lambda(R/I^[q]) / q^d.
HKFunction hk_function(const RingPresentation& ring, const Ideal& ideal, unsigned e_max,
                       const EngineOptions& options = {}, std::string ideal_label = "m");

/// Extrapolates the limit under lambda(q) = a q^d + lower-order terms. The last
/// w = min(d+1, #samples) samples determine a through the basis
/// {q^d, q^(d-1), ..., q^(d-w+2), 1}; the uncertainty is the gap to the
/// extrapolant from the window shifted one step back (the base colength
/// supplies the e = 0 point).
MultiplicityEstimate hk_estimate(const HKFunction& function, unsigned dimension);

/// Hilbert-Samuel multiplicity e(m) of a graded ring from the d-th difference of
/// lambda(R/m^n), n = 0..n_max. Uncertainty is the gap of the last two differences.
MultiplicityEstimate hs_multiplicity(const RingPresentation& ring, unsigned n_max);

/// e(I) through lambda(R/I^n) for an arbitrary m-primary ideal.
MultiplicityEstimate hs_multiplicity(const RingPresentation& ring, const Ideal& ideal, unsigned n_max,
                                     const EngineOptions& options = {});

/// lambda(R/m^[p]) == p^d.
bool is_regular(const RingPresentation& ring, const EngineOptions& options = {});

/// Exact solve of a square system over Q; throws PreconditionError when singular.
std::vector<Rational> solve_linear_system(std::vector<std::vector<Rational>> matrix, std::vector<Rational> rhs);

}  // namespace hkm
