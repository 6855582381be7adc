#include "hkm/bounds.hpp"

#include "hkm/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace hkm {

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::indeterminate: return "indeterminate";
    case CheckStatus::not_applicable: return "not_applicable";
  }
  return "?";
}

std::string to_string(CmAdvisory advisory) {
  switch (advisory) {
    case CmAdvisory::implied: return "implied";
    case CmAdvisory::not_implied: return "not_implied";
    case CmAdvisory::indeterminate: return "indeterminate";
    case CmAdvisory::inconsistent: return "inconsistent";
    case CmAdvisory::not_applicable: return "not_applicable";
  }
  return "?";
}

namespace {

struct Range {
  Rational lo;
  Rational hi;
};

Range range_of(const Interval& i) { return Range{i.lower(), i.upper()}; }

// e >= 1 in any local ring; keeps 1/e finite at the corners.
Range multiplicity_range(const Interval& e) {
  Range r = range_of(e);
  if (r.lo < 1) r.lo = 1;
  if (r.hi < r.lo) r.hi = r.lo;
  return r;
}

using Slack = std::function<Rational(const std::vector<Rational>&)>;

// Extremes of a slack that is monotone in each argument separately.
Range corners(const std::vector<Range>& args, const Slack& slack) {
  const std::size_t n = args.size();
  std::vector<Rational> point(n);
  std::optional<Range> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) point[i] = (mask >> i & 1) ? args[i].hi : args[i].lo;
    Rational v = slack(point);
    if (!out) {
      out = Range{v, v};
    } else {
      out->lo = std::min(out->lo, v);
      out->hi = std::max(out->hi, v);
    }
  }
  return *out;
}

// slack > 0 (strict) or slack >= 0.
CheckStatus classify(const Range& r, bool strict) {
  if (strict) {
    if (r.lo > 0) return CheckStatus::pass;
    if (r.hi <= 0) return CheckStatus::fail;
  } else {
    if (r.lo >= 0) return CheckStatus::pass;
    if (r.hi < 0) return CheckStatus::fail;
  }
  return CheckStatus::indeterminate;
}

CheckStatus combine(CheckStatus a, CheckStatus b) {
  if (a == CheckStatus::fail || b == CheckStatus::fail) return CheckStatus::fail;
  if (a == CheckStatus::indeterminate || b == CheckStatus::indeterminate) return CheckStatus::indeterminate;
  return CheckStatus::pass;
}

Rational p_power(std::uint32_t p, unsigned d) { return Rational(ipow(BigInt(p), d)); }

}  // namespace

CheckResult check_sandwich(const Interval& e_hk, const Interval& e, unsigned d) {
  const Rational fact = factorial(d);
  const std::vector<Range> args{range_of(e_hk), range_of(e)};
  const Slack below = [&](const std::vector<Rational>& v) -> Rational { return v[0] - std::max(Rational(1), Rational(v[1] / fact)); };
  const Slack above = [](const std::vector<Rational>& v) -> Rational { return v[1] - v[0]; };

  const std::vector<Rational> center{e_hk.value, e.value};
  CheckResult r{kCheckSandwich, CheckStatus::pass, std::min(below(center), above(center)), ""};
  const CheckStatus lower_status = classify(corners(args, below), false);
  const CheckStatus upper_status = classify(corners(args, above), false);
  r.status = combine(lower_status, upper_status);
  if (lower_status != CheckStatus::pass) r.note = "lower side " + to_string(lower_status);
  if (upper_status != CheckStatus::pass)
    r.note += (r.note.empty() ? "" : "; ") + std::string("upper side ") + to_string(upper_status);
  return r;
}

Rational lower_bound_threshold(const Rational& e, unsigned d, std::uint32_t p) {
  if (e <= 0) throw PreconditionError("multiplicity must be positive");
  return 1 + 1 / (p_power(p, d) * std::min(factorial(d), e));
}

CheckResult check_lower_bound_theorem(const Interval& e_hk, const Interval& e, unsigned d, std::uint32_t p,
                                      bool regular) {
  if (regular) throw PreconditionError("the lower bound applies only to nonregular rings");
  const std::vector<Range> args{range_of(e_hk), multiplicity_range(e)};
  const Slack slack = [&](const std::vector<Rational>& v) -> Rational { return v[0] - lower_bound_threshold(v[1], d, p); };
  const Rational e_center = std::max(e.value, Rational(1));
  CheckResult r{kCheckLowerBound, CheckStatus::pass, slack({e_hk.value, e_center}), ""};
  r.status = classify(corners(args, slack), true);
  r.note = "threshold " + to_fraction_string(lower_bound_threshold(e_center, d, p));
  return r;
}

CheckResult check_frobenius_colength(const Interval& e_hk, const Interval& e, unsigned d, std::uint32_t p,
                                     std::uint64_t colength_at_p) {
  const Rational pd = p_power(p, d);
  const Rational excess = Rational(colength_at_p) - pd;
  const std::vector<Range> args{range_of(e_hk), range_of(e)};
  const Slack slack = [&](const std::vector<Rational>& v) -> Rational { return pd * v[1] * (v[0] - 1) - v[0] * excess; };
  CheckResult r{kCheckFrobeniusColength, CheckStatus::pass, slack({e_hk.value, e.value}), ""};
  r.status = classify(corners(args, slack), false);
  r.note = "lambda(R/m^[p]) = " + std::to_string(colength_at_p);
  return r;
}

CheckResult check_trivial_bound(const Interval& e_hk, const Interval& e, unsigned d) {
  const Rational fact = factorial(d);
  CheckResult r{kCheckTrivialBound, CheckStatus::not_applicable, std::nullopt, ""};
  if (d < 2) {
    r.note = "needs d >= 2 (e_HK = e in dimension 1)";
    return r;
  }
  if (e.upper() <= fact) {
    r.note = "e <= d!";
    return r;
  }
  const std::vector<Range> args{range_of(e_hk), range_of(e)};
  const Slack slack = [&](const std::vector<Rational>& v) -> Rational { return v[0] - v[1] / fact; };
  r.slack = slack({e_hk.value, e.value});
  r.status = e.lower() > fact ? classify(corners(args, slack), true) : CheckStatus::indeterminate;
  if (e.lower() <= fact) r.note = "e interval straddles d!";
  return r;
}

CmThresholdResult check_cm_threshold(const Interval& e_hk, const Interval& e, unsigned d,
                                     const RingMetadata& metadata) {
  CmThresholdResult r;
  if (!metadata.unmixed || !metadata.cm_image) {
    r.note = "requires an unmixed ring that is a homomorphic image of a Cohen-Macaulay ring";
    return r;
  }
  if (d < 2) {
    r.note = "needs d >= 2 (e_HK = e in dimension 1)";
    return r;
  }
  const Rational fact = factorial(d);
  const std::vector<Range> args{range_of(e_hk), multiplicity_range(e)};
  const Slack slack = [&](const std::vector<Rational>& v) -> Rational {
    return 1 + std::max(Rational(1 / fact), Rational(1 / v[1])) - v[0];
  };
  r.slack = slack({e_hk.value, std::max(e.value, Rational(1))});
  switch (classify(corners(args, slack), false)) {
    case CheckStatus::pass: r.advisory = CmAdvisory::implied; break;
    case CheckStatus::fail: r.advisory = CmAdvisory::not_implied; break;
    default: r.advisory = CmAdvisory::indeterminate; break;
  }
  if (r.advisory == CmAdvisory::implied) {
    if (metadata.cohen_macaulay == false || metadata.f_rational == false) {
      r.advisory = CmAdvisory::inconsistent;
      r.note = "threshold implies Cohen-Macaulay and F-rational, contradicting the declared metadata";
    } else {
      r.note = "Cohen-Macaulay and F-rational";
    }
  }
  return r;
}

FStatistic f_statistic(std::string label, std::uint64_t colength, const Interval& e_hk_ring,
                       const Interval& e_hk_ideal) {
  const Rational lambda(colength);
  Interval f{lambda * e_hk_ring.value - e_hk_ideal.value, lambda * e_hk_ring.radius + e_hk_ideal.radius};
  return FStatistic{std::move(label), colength, e_hk_ring, e_hk_ideal, std::nullopt, std::move(f)};
}

FStatistic f_statistic_scaled(std::string label, std::uint64_t colength, const Interval& e_hk_ring,
                              const Rational& multiple) {
  const Rational factor = Rational(colength) - multiple;
  Interval ideal{multiple * e_hk_ring.value, abs(multiple) * e_hk_ring.radius};
  Interval f{factor * e_hk_ring.value, abs(factor) * e_hk_ring.radius};
  return FStatistic{std::move(label), colength, e_hk_ring, std::move(ideal), multiple, std::move(f)};
}

namespace {

// e_HK(I) at a corner: either its own coordinate or a multiple of the ring coordinate.
Rational ideal_at(const FStatistic& s, const Rational& ring_value, const Rational& own_value) {
  return s.ring_multiple ? *s.ring_multiple * ring_value : own_value;
}

}  // namespace

CheckResult check_f_monotonicity(const FStatistic& larger_ideal, const FStatistic& smaller_ideal) {
  if (larger_ideal.e_hk_ring.value != smaller_ideal.e_hk_ring.value ||
      larger_ideal.e_hk_ring.radius != smaller_ideal.e_hk_ring.radius)
    throw PreconditionError("f statistics computed from different e_HK(R) estimates");
  // f_J - f_I = (lambda_J - lambda_I) e_HK(R) - e_HK(J) + e_HK(I)
  const Rational dlambda = Rational(smaller_ideal.colength) - Rational(larger_ideal.colength);
  const std::vector<Range> args{range_of(larger_ideal.e_hk_ring), range_of(larger_ideal.e_hk_ideal),
                                range_of(smaller_ideal.e_hk_ideal)};
  const Slack slack = [&](const std::vector<Rational>& v) -> Rational {
    return dlambda * v[0] - ideal_at(smaller_ideal, v[0], v[2]) + ideal_at(larger_ideal, v[0], v[1]);
  };
  CheckResult r{kCheckFMonotonicity, CheckStatus::pass,
                slack({larger_ideal.e_hk_ring.value, larger_ideal.e_hk_ideal.value, smaller_ideal.e_hk_ideal.value}),
                larger_ideal.label + " contains " + smaller_ideal.label};
  r.status = classify(corners(args, slack), false);
  return r;
}

CheckResult check_colength_proxy(const FStatistic& stat) {
  const Rational lambda(stat.colength);
  const std::vector<Range> args{range_of(stat.e_hk_ring), range_of(stat.e_hk_ideal)};
  const Slack slack = [&](const std::vector<Rational>& v) -> Rational { return lambda * v[0] - ideal_at(stat, v[0], v[1]); };
  CheckResult r{kCheckColengthProxy, CheckStatus::pass, stat.f.value, "f_" + stat.label + " >= 0"};
  r.status = classify(corners(args, slack), false);
  return r;
}

bool ideal_contains(const Ideal& defining, const Ideal& larger, const Ideal& smaller, MonomialOrder order) {
  const GroebnerBasis basis = buchberger(defining + larger, order);
  return contains(basis, smaller);
}

std::optional<EpsilonReference> epsilon_reference(unsigned d) {
  switch (d) {
    case 1: return EpsilonReference{Rational(1), false, Rational(0), "exact"};
    case 2: return EpsilonReference{Rational(1, 2), false, Rational(0), "exact"};
    case 3: return EpsilonReference{Rational(1, 3), false, Rational(1, 20), "conjectural, tolerance 1/20"};
    case 4: return EpsilonReference{Rational(4, 25), true, Rational(0), "lower bound only"};
    default: return std::nullopt;
  }
}

std::vector<EpsilonRow> epsilon_table(const std::vector<BoundReport>& reports) {
  std::map<std::pair<unsigned, std::uint32_t>, std::vector<const BoundReport*>> cells;
  for (const auto& r : reports)
    if (r.error.empty() && !r.regular) cells[{r.d, r.p}].push_back(&r);

  std::vector<EpsilonRow> rows;
  for (auto& [key, members] : cells) {
    const auto [d, p] = key;
    std::sort(members.begin(), members.end(), [](const BoundReport* a, const BoundReport* b) {
      if (a->e_hk.value != b->e_hk.value) return a->e_hk.value < b->e_hk.value;
      return a->ring_name < b->ring_name;
    });
    const BoundReport& best = *members.front();
    EpsilonRow row;
    row.d = d;
    row.p = p;
    row.rings = members.size();
    row.epsilon = Interval{best.e_hk.value - 1, best.e_hk.uncertainty};
    row.minimizer = best.ring_name;
    row.general_bound = 1 / (p_power(p, d) * factorial(d));
    row.minimizer_bound = lower_bound_threshold(std::max(best.e_r.value, Rational(1)), d, p) - 1;
    for (const BoundReport* m : members) {
      const Rational e_unfavorable = std::max(m->e_r.lower(), Rational(1));
      if (m->e_hk.lower() <= lower_bound_threshold(e_unfavorable, d, p)) row.bound_respected = false;
    }
    row.reference = epsilon_reference(d);
    if (row.reference) {
      const EpsilonReference& ref = *row.reference;
      if (ref.is_lower_bound_only) {
        row.reference_status = row.epsilon.lower() >= ref.value   ? "lower-bound-respected"
                               : row.epsilon.upper() < ref.value ? "mismatch"
                                                                  : "indeterminate";
      } else {
        const Rational distance = abs(row.epsilon.value - ref.value);
        if (distance + row.epsilon.radius <= ref.tolerance)
          row.reference_status = "match";
        else if (distance - row.epsilon.radius > ref.tolerance)
          row.reference_status = "mismatch";
        else
          row.reference_status = "indeterminate";
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int exit_status(const std::vector<BoundReport>& reports) {
  bool failed = false;
  bool indeterminate = false;
  for (const auto& r : reports) {
    if (!r.error.empty()) return 3;
    for (const auto& c : r.checks) {
      failed |= c.status == CheckStatus::fail;
      indeterminate |= c.status == CheckStatus::indeterminate;
    }
    failed |= r.cm_advisory.advisory == CmAdvisory::inconsistent;
  }
  if (failed) return 1;
  if (indeterminate) return 2;
  return 0;
}

}  // namespace hkm
