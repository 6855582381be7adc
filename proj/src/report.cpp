#include "hkm/report.hpp"

#include "hkm/cache.hpp"
#include "hkm/pipeline.hpp"

#include <sstream>

namespace hkm {

using nlohmann::json;

namespace {

json fraction(const Rational& r) { return to_fraction_string(r); }

json optional_fraction(const std::optional<Rational>& r) { return r ? fraction(*r) : json(nullptr); }

json interval_json(const Interval& i) { return json{{"value", fraction(i.value)}, {"radius", fraction(i.radius)}}; }

int severity(CheckStatus s) {
  switch (s) {
    case CheckStatus::fail: return 3;
    case CheckStatus::indeterminate: return 2;
    case CheckStatus::pass: return 1;
    case CheckStatus::not_applicable: return 0;
  }
  return 0;
}

}  // namespace

json estimate_json(const MultiplicityEstimate& e) {
  return json{{"value", fraction(e.value)},
              {"uncertainty", fraction(e.uncertainty)},
              {"method", to_string(e.method)},
              {"samples_used", e.samples_used}};
}

json samples_json(const std::vector<HKSample>& samples) {
  json out = json::array();
  for (const auto& s : samples)
    out.push_back(json{{"e", s.e}, {"q", s.q}, {"colength", s.colength}, {"normalized", fraction(s.normalized)}});
  return out;
}

json hk_function_json(const HKFunction& fn) {
  return json{{"ring", fn.ring_name},
              {"ideal", fn.ideal_label},
              {"dimension", fn.dimension},
              {"base_colength", fn.base_colength},
              {"samples", samples_json(fn.samples)}};
}

json bound_report_json(const BoundReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(
        json{{"id", c.id}, {"status", to_string(c.status)}, {"slack", optional_fraction(c.slack)}, {"note", c.note}});
  json f_stats = json::array();
  for (const auto& f : r.f_stats)
    f_stats.push_back(json{{"ideal", f.label},
                           {"colength", f.colength},
                           {"e_hk_ideal", interval_json(f.e_hk_ideal)},
                           {"f", interval_json(f.f)}});
  json known = nullptr;
  if (r.known_e_hk)
    known = json{{"value", fraction(*r.known_e_hk)}, {"source", r.known_e_hk_source}, {"status", r.known_e_hk_status}};
  const bool ok = r.error.empty();
  return json{{"name", r.ring_name},
              {"p", r.p},
              {"d", ok ? json(r.d) : json(nullptr)},
              {"regular", ok ? json(r.regular) : json(nullptr)},
              {"e", ok ? estimate_json(r.e_r) : json(nullptr)},
              {"e_hk", ok ? estimate_json(r.e_hk) : json(nullptr)},
              {"base_colength", r.base_colength},
              {"samples", samples_json(r.hk_samples)},
              {"checks", checks},
              {"cm_advisory",
               json{{"status", to_string(r.cm_advisory.advisory)},
                    {"slack", optional_fraction(r.cm_advisory.slack)},
                    {"note", r.cm_advisory.note}}},
              {"f_stats", f_stats},
              {"known_e_hk", known},
              {"error", ok ? json(nullptr) : json(r.error)}};
}

json epsilon_row_json(const EpsilonRow& row) {
  json reference = nullptr;
  if (row.reference)
    reference = json{{"value", fraction(row.reference->value)},
                     {"lower_bound_only", row.reference->is_lower_bound_only},
                     {"tolerance", fraction(row.reference->tolerance)},
                     {"note", row.reference->note}};
  return json{{"d", row.d},
              {"p", row.p},
              {"rings", row.rings},
              {"epsilon", interval_json(row.epsilon)},
              {"minimizer", row.minimizer},
              {"general_bound", fraction(row.general_bound)},
              {"minimizer_bound", fraction(row.minimizer_bound)},
              {"bound_respected", row.bound_respected},
              {"reference", reference},
              {"reference_status", row.reference_status}};
}

json report_json(const std::vector<BoundReport>& reports, const std::vector<EpsilonRow>& table,
                 const ReportSettings& settings) {
  json rings = json::array();
  for (const auto& r : reports) rings.push_back(bound_report_json(r));
  json rows = json::array();
  for (const auto& row : table) rows.push_back(epsilon_row_json(row));
  return json{{"engine_version", kEngineVersion},
              {"settings", json{{"e_max", settings.e_max}, {"n_max", settings.n_max}, {"order", to_string(settings.order)}}},
              {"rings", rings},
              {"epsilon_table", rows},
              {"exit_status", exit_status(reports)}};
}

std::string render_json(const json& document) { return document.dump(2) + "\n"; }

const std::vector<std::string>& csv_check_columns() {
  static const std::vector<std::string> columns{kCheckColengthFloor,  kCheckSandwich,        kCheckLowerBound,
                                                kCheckFrobeniusColength, kCheckTrivialBound, kCheckColengthProxy,
                                                kCheckFMonotonicity,  kCheckParameterIdeal};
  return columns;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv(const std::vector<BoundReport>& reports, const std::vector<EpsilonRow>& table) {
  std::ostringstream out;
  out << "ring,p,d,regular,e,e_uncertainty,e_hk,e_hk_uncertainty,e_hk_method";
  for (const auto& id : csv_check_columns()) out << ',' << id << "_status," << id << "_slack";
  out << ",cm_advisory,known_e_hk_status,error\n";

  for (const auto& r : reports) {
    const bool ok = r.error.empty();
    out << csv_field(r.ring_name) << ',' << r.p << ',';
    if (ok) {
      out << r.d << ',' << (r.regular ? "true" : "false") << ',' << to_fraction_string(r.e_r.value) << ','
          << to_fraction_string(r.e_r.uncertainty) << ',' << to_fraction_string(r.e_hk.value) << ','
          << to_fraction_string(r.e_hk.uncertainty) << ',' << to_string(r.e_hk.method);
    } else {
      out << ",,,,,,";
    }
    for (const auto& id : csv_check_columns()) {
      const CheckResult* worst = nullptr;
      std::optional<Rational> slack;
      for (const auto& c : r.checks) {
        if (c.id != id) continue;
        if (!worst || severity(c.status) > severity(worst->status)) worst = &c;
        if (c.slack && (!slack || *c.slack < *slack)) slack = c.slack;
      }
      out << ',' << (worst ? to_string(worst->status) : "") << ',' << (slack ? to_fraction_string(*slack) : "");
    }
    out << ',' << (ok ? to_string(r.cm_advisory.advisory) : "") << ',' << r.known_e_hk_status << ','
        << csv_field(r.error) << '\n';
  }

  out << "\nd,p,rings,epsilon,epsilon_uncertainty,minimizer,general_bound,minimizer_bound,bound_respected,reference,"
         "reference_status\n";
  for (const auto& row : table) {
    out << row.d << ',' << row.p << ',' << row.rings << ',' << to_fraction_string(row.epsilon.value) << ','
        << to_fraction_string(row.epsilon.radius) << ',' << csv_field(row.minimizer) << ','
        << to_fraction_string(row.general_bound) << ',' << to_fraction_string(row.minimizer_bound) << ','
        << (row.bound_respected ? "true" : "false") << ','
        << (row.reference ? to_fraction_string(row.reference->value) : "") << ',' << row.reference_status << '\n';
  }
  return out.str();
}

}  // namespace hkm
