#include "hkm/pipeline.hpp"

#include "hkm/errors.hpp"
#include "hkm/staircase.hpp"

#include <algorithm>
#include <future>

namespace hkm {

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw Error(std::string(name) + ": " + e.what());
  }
}

CheckResult colength_floor(const std::vector<HKSample>& samples, unsigned d, bool regular) {
  CheckResult r{kCheckColengthFloor, CheckStatus::pass, std::nullopt, ""};
  for (const auto& s : samples) {
    const Rational excess = s.normalized - 1;
    if (!r.slack || excess < *r.slack) r.slack = excess;
    const BigInt qd = ipow(BigInt(s.q), d);
    if (BigInt(s.colength) < qd) {
      r.status = CheckStatus::fail;
      r.note = "colength below q^d at e=" + std::to_string(s.e);
    } else if ((BigInt(s.colength) == qd) != regular) {
      r.status = CheckStatus::fail;
      r.note = "equality with q^d at e=" + std::to_string(s.e) + " disagrees with e=1";
    }
  }
  return r;
}

}  // namespace

BoundReport run_pipeline(const RingSpec& spec, const PipelineOptions& options) {
  BoundReport report;
  report.ring_name = spec.metadata.name;
  report.p = spec.characteristic();
  report.known_e_hk = spec.metadata.known_e_hk;
  report.known_e_hk_source = spec.metadata.known_e_hk_source;
  try {
    const EngineOptions& engine = options.engine;
    const RingPresentation ring =
        stage("presentation", [&] { return to_presentation(spec, engine.groebner, engine.order); });
    const unsigned d = ring.dimension();
    const std::uint32_t p = ring.characteristic();
    const Rational pd(ipow(BigInt(p), d));
    report.d = d;
    const Ideal m = ring.maximal_ideal();

    const HKFunction fn = stage("hk_function", [&] { return hk_function(ring, m, options.e_max, engine); });
    report.hk_samples = fn.samples;
    report.base_colength = fn.base_colength;
    report.regular = Rational(fn.samples.front().colength) == pd;
    report.e_hk = stage("hk_estimate", [&] { return hk_estimate(fn, d); });
    report.e_r = stage("hs_multiplicity", [&] {
      return ring.metadata().graded ? hs_multiplicity(ring, options.n_max)
                                    : hs_multiplicity(ring, m, options.n_max, engine);
    });

    const Interval e_hk = Interval::from(report.e_hk);
    const Interval e = Interval::from(report.e_r);
    const RingMetadata& meta = ring.metadata();

    report.checks.push_back(colength_floor(fn.samples, d, report.regular));
    report.checks.push_back(check_sandwich(e_hk, e, d));
    if (report.regular) {
      report.checks.push_back({kCheckLowerBound, CheckStatus::not_applicable, std::nullopt, "regular ring"});
    } else if (!meta.unmixed || !meta.cm_image) {
      report.checks.push_back({kCheckLowerBound, CheckStatus::not_applicable, std::nullopt,
                               "not declared unmixed and a homomorphic image of a Cohen-Macaulay ring"});
    } else {
      report.checks.push_back(check_lower_bound_theorem(e_hk, e, d, p, false));
    }
    if (meta.cohen_macaulay == true && meta.f_rational == true)
      report.checks.push_back(check_frobenius_colength(e_hk, e, d, p, fn.samples.front().colength));
    else
      report.checks.push_back({kCheckFrobeniusColength, CheckStatus::not_applicable, std::nullopt,
                               "not declared Cohen-Macaulay and F-rational"});
    report.checks.push_back(check_trivial_bound(e_hk, e, d));
    report.cm_advisory = check_cm_threshold(e_hk, e, d, meta);

    // f statistics along m, m^2, m^[p]
    stage("f_statistics", [&] {
      const Ideal m2 = m.power(2);
      const Ideal mp = frobenius_power(m, p);
      const std::uint64_t lambda_m2 = colength(ring, m2, engine).colength;
      Interval e_m2;
      if (spec.relations.empty()) {
        e_m2 = Interval::exact(exact_hk_monomial(StaircaseRegion::from_ideal(m2)));
      } else {
        e_m2 = Interval::from(hk_estimate(hk_function(ring, m2, options.e_max, engine, "m^2"), d));
      }
      report.f_stats.push_back(f_statistic_scaled("m", fn.base_colength, e_hk, 1));
      report.f_stats.push_back(f_statistic("m^2", lambda_m2, e_hk, e_m2));
      // e_HK(I^[p]) = p^d e_HK(I)
      report.f_stats.push_back(f_statistic_scaled("m^[p]", fn.samples.front().colength, e_hk, pd));
      const Ideal& defining = ring.defining_ideal();
      if (!ideal_contains(defining, m, m2, engine.order) || !ideal_contains(defining, m2, mp, engine.order))
        throw PreconditionError("ideal chain m, m^2, m^[p] is not nested");
      for (const auto& s : report.f_stats) report.checks.push_back(check_colength_proxy(s));
      report.checks.push_back(check_f_monotonicity(report.f_stats[0], report.f_stats[1]));
      report.checks.push_back(check_f_monotonicity(report.f_stats[1], report.f_stats[2]));
      return 0;
    });

    if (!spec.parameter_ideal.empty()) {
      stage("parameter_ideal", [&] {
        const Ideal params(ring.ring(), spec.parameter_ideal);
        const MultiplicityEstimate hk = hk_estimate(hk_function(ring, params, options.e_max, engine, "q"), d);
        const MultiplicityEstimate hs = hs_multiplicity(ring, params, options.n_max, engine);
        const Rational allowance = hk.uncertainty + hs.uncertainty;
        const Rational gap = abs(hk.value - hs.value);
        CheckResult r{kCheckParameterIdeal, gap <= allowance ? CheckStatus::pass : CheckStatus::fail,
                      allowance - gap,
                      "e_HK = " + to_fraction_string(hk.value) + ", e = " + to_fraction_string(hs.value)};
        report.checks.push_back(r);
        return 0;
      });
    }

    if (report.known_e_hk)
      report.known_e_hk_status =
          abs(*report.known_e_hk - report.e_hk.value) <= report.e_hk.uncertainty ? "consistent" : "inconsistent";
  } catch (const std::exception& e) {
    report.error = e.what();
  }
  return report;
}

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(path, ec)) return {path};
  if (!std::filesystem::is_directory(path, ec)) throw ValidationError("no such corpus '" + path.string() + "'");
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(path))
    if (e.is_regular_file() && e.path().extension() == ".ring") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BoundReport> run_corpus(const std::vector<std::filesystem::path>& files, const PipelineOptions& options,
                                    bool parallel) {
  auto one = [&options](const std::filesystem::path& file) {
    RingSpec spec;
    try {
      spec = load_ring_spec(file);
    } catch (const std::exception& e) {
      BoundReport failed;
      failed.ring_name = file.stem().string();
      failed.error = std::string("spec: ") + e.what();
      return failed;
    }
    return run_pipeline(spec, options);
  };
  std::vector<BoundReport> out;
  if (parallel) {
    std::vector<std::future<BoundReport>> futures;
    for (const auto& f : files) futures.push_back(std::async(std::launch::async, one, f));
    for (auto& f : futures) out.push_back(f.get());
  } else {
    for (const auto& f : files) out.push_back(one(f));
  }
  return out;
}

}  // namespace hkm
