#pragma once

#include "hkm/hk_engine.hpp"
#include "hkm/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hkm {

/// Central value with a symmetric half-width.
struct Interval {
  Rational value;
  Rational radius;

  Rational lower() const { return value - radius; }
  Rational upper() const { return value + radius; }

  static Interval exact(Rational v) { return Interval{std::move(v), Rational(0)}; }
  static Interval from(const MultiplicityEstimate& e) { return Interval{e.value, e.uncertainty}; }
};

enum class CheckStatus { pass, fail, indeterminate, not_applicable };

std::string to_string(CheckStatus status);

struct CheckResult {
  std::string id;
  CheckStatus status = CheckStatus::not_applicable;
  /// Distance from the threshold at the central values; empty when not applicable.
  std::optional<Rational> slack;
  std::string note;
};

enum class CmAdvisory { implied, not_implied, indeterminate, inconsistent, not_applicable };

std::string to_string(CmAdvisory advisory);

// Check identifiers used in reports.
inline constexpr const char* kCheckColengthFloor = "colength_floor";
inline constexpr const char* kCheckSandwich = "sandwich";
inline constexpr const char* kCheckLowerBound = "lower_bound_theorem";
inline constexpr const char* kCheckFrobeniusColength = "frobenius_colength_inequality";
inline constexpr const char* kCheckTrivialBound = "trivial_bound";
inline constexpr const char* kCheckColengthProxy = "tight_closure_proxy";
inline constexpr const char* kCheckFMonotonicity = "f_monotonicity";

/// max(1, e/d!) <= e_HK <= e.
CheckResult check_sandwich(const Interval& e_hk, const Interval& e, unsigned d);

/// e_HK > 1 + max{1/(p^d d!), 1/(p^d e)} for a nonregular ring.
/// Throws PreconditionError when called with regular = true.
CheckResult check_lower_bound_theorem(const Interval& e_hk, const Interval& e, unsigned d, std::uint32_t p,
                                      bool regular);

/// The threshold 1 + max{1/(p^d d!), 1/(p^d e)}.
Rational lower_bound_threshold(const Rational& e, unsigned d, std::uint32_t p);

/// e_HK (lambda(R/m^[p]) - p^d) <= p^d e (e_HK - 1).
CheckResult check_frobenius_colength(const Interval& e_hk, const Interval& e, unsigned d, std::uint32_t p,
                                     std::uint64_t colength_at_p);

/// e_HK > e/d!, applicable when e > d! and d >= 2.
CheckResult check_trivial_bound(const Interval& e_hk, const Interval& e, unsigned d);

struct CmThresholdResult {
  CmAdvisory advisory = CmAdvisory::not_applicable;
  std::optional<Rational> slack;
  std::string note;
};

/// e_HK <= 1 + max{1/d!, 1/e} (inclusive), cross-checked against declared CM/F-rational flags.
/// Not applicable below dimension 2.
CmThresholdResult check_cm_threshold(const Interval& e_hk, const Interval& e, unsigned d,
                                     const RingMetadata& metadata);

struct FStatistic {
  std::string label;
  std::uint64_t colength;  // lambda(R/I)
  Interval e_hk_ring;
  Interval e_hk_ideal;
  /// Set when e_HK(I) is exactly this multiple of e_HK(R), as for I = m or I = m^[q].
  std::optional<Rational> ring_multiple;
  Interval f;
};

/// f_I = lambda(R/I) e_HK(R) - e_HK(I), with propagated radius.
FStatistic f_statistic(std::string label, std::uint64_t colength, const Interval& e_hk_ring,
                       const Interval& e_hk_ideal);

/// f_I for e_HK(I) = multiple * e_HK(R); the shared estimate is not double counted.
FStatistic f_statistic_scaled(std::string label, std::uint64_t colength, const Interval& e_hk_ring,
                              const Rational& multiple);

/// f_I <= f_J for J contained in I, at interval level. Both statistics must
/// share the same e_HK(R) estimate; the shared term is not double counted.
CheckResult check_f_monotonicity(const FStatistic& larger_ideal, const FStatistic& smaller_ideal);

/// f_I >= 0, the computable consequence of e_HK(I) <= lambda(R/I*) e_HK(R).
CheckResult check_colength_proxy(const FStatistic& stat);

/// Containment J subset of I via normal forms, in the quotient by `defining` (may be empty).
bool ideal_contains(const Ideal& defining, const Ideal& larger, const Ideal& smaller,
                    MonomialOrder order = MonomialOrder::grevlex);

/// Per-ring summary consumed by the epsilon table and the report writer.
struct BoundReport {
  std::string ring_name;
  unsigned d = 0;
  std::uint32_t p = 0;
  MultiplicityEstimate e_r;
  MultiplicityEstimate e_hk;
  bool regular = false;
  std::vector<HKSample> hk_samples;
  std::uint64_t base_colength = 1;
  std::vector<CheckResult> checks;
  CmThresholdResult cm_advisory;
  std::vector<FStatistic> f_stats;
  std::optional<Rational> known_e_hk;
  std::string known_e_hk_source;
  std::string known_e_hk_status;  // "consistent" / "inconsistent" / ""
  std::string error;  // structured failure message when a stage threw
};

/// Reference values for epsilon_HK(d) in low dimension.
struct EpsilonReference {
  Rational value;
  bool is_lower_bound_only;
  Rational tolerance;
  std::string note;
};

std::optional<EpsilonReference> epsilon_reference(unsigned d);

struct EpsilonRow {
  unsigned d = 0;
  std::uint32_t p = 0;
  std::size_t rings = 0;
  Interval epsilon;
  std::string minimizer;
  /// 1/(p^d d!), independent of the ring.
  Rational general_bound;
  /// 1/(p^d min(d!, e)) for the minimizing ring.
  Rational minimizer_bound;
  bool bound_respected = true;
  std::optional<EpsilonReference> reference;
  std::string reference_status;  // "match", "mismatch", "indeterminate", "lower-bound-respected", ""
};

/// Minimum of e_HK - 1 over the nonregular rings of each (d, p) cell.
/// Cells without a nonregular ring are omitted; rows sorted by (d, p).
std::vector<EpsilonRow> epsilon_table(const std::vector<BoundReport>& reports);

/// 0 all pass, 1 some failure, 2 some indeterminate (and no failure).
int exit_status(const std::vector<BoundReport>& reports);

}  // namespace hkm
