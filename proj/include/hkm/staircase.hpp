#pragma once

#include "hkm/groebner.hpp"
#include "hkm/rational.hpp"

#include <cstdint>
#include <vector>

namespace hkm {

using ExponentVector = std::vector<std::uint32_t>;

/// Minimal generators of an m-primary monomial ideal and the box cut out by
/// its pure powers x_i^{a_i}.
class StaircaseRegion {
 public:
  /// Removes dominated generators. Throws PreconditionError when some variable
  /// has no pure power or the vectors have unequal lengths.
  explicit StaircaseRegion(std::vector<ExponentVector> generators);

  /// From a monomial ideal; throws PreconditionError for non-monomial generators.
  static StaircaseRegion from_ideal(const Ideal& ideal);

  std::size_t nvars() const noexcept { return box_.size(); }
  const std::vector<ExponentVector>& generators() const noexcept { return generators_; }
  const ExponentVector& box() const noexcept { return box_; }

 private:
  std::vector<ExponentVector> generators_;
  ExponentVector box_;
};

/// Largest number of non-pure-power generators accepted by exact_hk_monomial.
inline constexpr std::size_t kMaxStaircaseGenerators = 20;

/// e_HK of the monomial ideal: volume of the box minus the union of the
/// orthants g + R_{>=0}^n, by inclusion-exclusion over generator subsets.
Rational exact_hk_monomial(const StaircaseRegion& region);

/// Lattice points of the box scaled by q not dominated by any scaled
/// generator, i.e. lambda(S/I^[q]), by direct enumeration.
std::uint64_t brute_force_colength(const StaircaseRegion& region, std::uint64_t q);

inline constexpr std::uint64_t kMaxLatticePoints = 100'000'000;

}  // namespace hkm
