#include "hkm/cache.hpp"
#include "hkm/errors.hpp"
#include "hkm/parser.hpp"
#include "hkm/pipeline.hpp"
#include "hkm/report.hpp"
#include "hkm/staircase.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace hkm;
using nlohmann::json;

namespace {

constexpr int kExitOperational = 3;

struct GlobalOptions {
  unsigned e_max = 3;
  unsigned n_max = 12;
  std::string order = "grevlex";
  std::string cache_dir = ".hkm-cache";
  bool no_cache = false;
  std::string format = "json";
  std::string output;
  std::uint64_t max_pairs = GroebnerOptions{}.max_pairs;
};

struct Session {
  GlobalOptions options;
  std::unique_ptr<ColengthCache> cache;

  EngineOptions engine() {
    EngineOptions e;
    e.order = parse_monomial_order(options.order);
    e.groebner.max_pairs = options.max_pairs;
    if (!options.no_cache) {
      if (!cache) cache = std::make_unique<ColengthCache>(options.cache_dir);
      e.source = cache->source(e);
    }
    return e;
  }

  PipelineOptions pipeline() { return PipelineOptions{options.e_max, options.n_max, engine()}; }

  ReportSettings settings() const {
    return ReportSettings{options.e_max, options.n_max, parse_monomial_order(options.order)};
  }

  void emit(const std::string& text) const {
    if (options.output.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(options.output, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write '" + options.output + "'");
    out << text;
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

Ideal ideal_from_text(const RingPresentation& ring, const std::string& text) {
  if (text.empty() || text == "m") return ring.maximal_ideal();
  std::vector<Polynomial> gens;
  for (const auto& g : split_list(text)) gens.push_back(parse_polynomial(g, ring.ring()));
  return Ideal(ring.ring(), std::move(gens));
}

RingSpec load_spec(const std::string& path) {
  try {
    return load_ring_spec(path);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

RingPresentation load_presentation(const std::string& path, const EngineOptions& engine) {
  return to_presentation(load_spec(path), engine.groebner, engine.order);
}

std::string estimate_csv(const MultiplicityEstimate& e) {
  return "value,uncertainty,method,samples_used\n" + to_fraction_string(e.value) + "," +
         to_fraction_string(e.uncertainty) + "," + to_string(e.method) + "," + std::to_string(e.samples_used) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Session session;
  GlobalOptions& g = session.options;

  CLI::App app{"Hilbert-Kunz multiplicities over prime fields and checks of their lower bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--e-max", g.e_max, "Largest Frobenius exponent e (q = p^e)")->check(CLI::Range(1u, 16u));
  app.add_option("--n-max", g.n_max, "Largest power n of the ideal for Hilbert-Samuel")->check(CLI::Range(1u, 1000u));
  app.add_option("--order", g.order, "Monomial order")->check(CLI::IsMember({"lex", "grlex", "grevlex"}));
  app.add_option("--cache-dir", g.cache_dir, "Colength cache directory");
  app.add_flag("--no-cache", g.no_cache, "Compute everything directly");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", g.output, "Write to a file instead of stdout");
  app.add_option("--max-pairs", g.max_pairs, "Gröbner work budget (S-pairs per basis computation)");

  std::string spec_path;
  std::string ideal_text;

  auto* hk = app.add_subcommand("hk", "Hilbert-Kunz function and multiplicity");
  hk->require_subcommand(1);
  auto* hk_fn = hk->add_subcommand("fn", "Sample lambda(R/I^[q]) for e = 1..e_max");
  auto* hk_est = hk->add_subcommand("est", "Extrapolate e_HK(I)");
  for (auto* sub : {hk_fn, hk_est}) {
    sub->add_option("spec", spec_path, "Ring spec file")->required()->check(CLI::ExistingFile);
    sub->add_option("--ideal", ideal_text, "Comma-separated generators (default: the maximal ideal)");
  }

  auto* mult = app.add_subcommand("mult", "Hilbert-Samuel multiplicity e(I)");
  mult->add_option("spec", spec_path, "Ring spec file")->required()->check(CLI::ExistingFile);
  mult->add_option("--ideal", ideal_text, "Comma-separated generators (default: the maximal ideal)");

  std::string vol_vars;
  std::vector<std::string> vol_gens;
  std::uint64_t vol_brute_q = 0;
  auto* vol = app.add_subcommand("vol", "Exact e_HK of a monomial ideal of a polynomial ring");
  vol->add_option("--vars", vol_vars, "Comma-separated variable names")->required();
  vol->add_option("generators", vol_gens, "Monomial generators, e.g. x^2 x*y y^2")->required();
  vol->add_option("--brute-q", vol_brute_q, "Also count lambda(S/I^[q]) by lattice enumeration");

  auto* verify = app.add_subcommand("verify", "Full bound report for one ring");
  verify->add_option("spec", spec_path, "Ring spec file")->required()->check(CLI::ExistingFile);

  std::string corpus_path;
  bool check_cache = false;
  std::size_t verify_samples = 20;
  bool serial = false;
  auto* report = app.add_subcommand("report", "Corpus sweep and epsilon table");
  report->add_option("corpus", corpus_path, "Directory of *.ring files")->required()->check(CLI::ExistingPath);
  report->add_flag("--verify-cache", check_cache, "Recompute sampled cache entries after the sweep");
  report->add_option("--verify-samples", verify_samples, "Entries sampled by --verify-cache");
  report->add_flag("--serial", serial, "Process rings one at a time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitOperational;
  }

  const bool csv = g.format == "csv";
  try {
    if (hk_fn->parsed() || hk_est->parsed()) {
      EngineOptions engine = session.engine();
      const RingPresentation ring = load_presentation(spec_path, engine);
      const Ideal ideal = ideal_from_text(ring, ideal_text);
      const HKFunction fn = hk_function(ring, ideal, g.e_max, engine, ideal_text.empty() ? "m" : ideal_text);
      if (hk_fn->parsed()) {
        if (csv) {
          std::string text = "e,q,colength,normalized\n";
          for (const auto& s : fn.samples)
            text += std::to_string(s.e) + "," + std::to_string(s.q) + "," + std::to_string(s.colength) + "," +
                    to_fraction_string(s.normalized) + "\n";
          session.emit(text);
        } else {
          session.emit(render_json(hk_function_json(fn)));
        }
      } else {
        const MultiplicityEstimate e = hk_estimate(fn, ring.dimension());
        if (csv) {
          session.emit(estimate_csv(e));
        } else {
          json doc = hk_function_json(fn);
          doc["e_hk"] = estimate_json(e);
          session.emit(render_json(doc));
        }
      }
      return 0;
    }

    if (mult->parsed()) {
      EngineOptions engine = session.engine();
      const RingPresentation ring = load_presentation(spec_path, engine);
      const MultiplicityEstimate e = ideal_text.empty() && ring.metadata().graded
                                         ? hs_multiplicity(ring, g.n_max)
                                         : hs_multiplicity(ring, ideal_from_text(ring, ideal_text), g.n_max, engine);
      if (csv) {
        session.emit(estimate_csv(e));
      } else {
        session.emit(render_json(json{{"ring", ring.name()},
                                      {"ideal", ideal_text.empty() ? "m" : ideal_text},
                                      {"dimension", ring.dimension()},
                                      {"e", estimate_json(e)}}));
      }
      return e.uncertainty == 0 ? 0 : 2;
    }

    if (vol->parsed()) {
      auto ring = PolyRing::make(2, split_list(vol_vars));
      std::vector<Polynomial> gens;
      for (const auto& text : vol_gens)
        for (const auto& piece : split_list(text)) gens.push_back(parse_polynomial(piece, ring));
      const StaircaseRegion region = StaircaseRegion::from_ideal(Ideal(ring, std::move(gens)));
      const MultiplicityEstimate e =
          MultiplicityEstimate::exact(exact_hk_monomial(region), EstimateMethod::exact_volume);
      json doc{{"vars", ring->variables()}, {"e_hk", estimate_json(e)}};
      if (vol_brute_q) doc["brute_force"] = json{{"q", vol_brute_q}, {"colength", brute_force_colength(region, vol_brute_q)}};
      session.emit(csv ? estimate_csv(e) : render_json(doc));
      return 0;
    }

    if (verify->parsed()) {
      PipelineOptions options = session.pipeline();
      const BoundReport r = run_pipeline(load_spec(spec_path), options);
      const std::vector<BoundReport> reports{r};
      const auto table = epsilon_table(reports);
      session.emit(csv ? render_csv(reports, table) : render_json(report_json(reports, table, session.settings())));
      if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
      return exit_status(reports);
    }

    if (report->parsed()) {
      PipelineOptions options = session.pipeline();
      const std::vector<BoundReport> reports = run_corpus(corpus_files(corpus_path), options, !serial);
      const auto table = epsilon_table(reports);
      session.emit(csv ? render_csv(reports, table) : render_json(report_json(reports, table, session.settings())));
      for (const auto& r : reports)
        if (!r.error.empty()) std::cerr << "error: " << r.ring_name << ": " << r.error << "\n";
      int status = exit_status(reports);
      if (check_cache) {
        if (!session.cache) throw ValidationError("--verify-cache needs the cache (drop --no-cache)");
        const CacheVerification v = verify_cache(*session.cache, verify_samples, options.engine.groebner);
        std::cerr << "cache: " << v.checked << " of " << v.total_entries << " entries recomputed, "
                  << v.mismatches.size() << " mismatches\n";
        for (const auto& m : v.mismatches) std::cerr << "  " << m << "\n";
        if (!v.ok() && status != kExitOperational) status = 1;
      }
      return status;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOperational;
  }
  return kExitOperational;
}
