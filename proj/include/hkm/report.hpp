#pragma once

#include "hkm/bounds.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace hkm {

struct ReportSettings {
  unsigned e_max = 3;
  unsigned n_max = 12;
  MonomialOrder order = MonomialOrder::grevlex;
};

nlohmann::json estimate_json(const MultiplicityEstimate& estimate);
nlohmann::json samples_json(const std::vector<HKSample>& samples);
nlohmann::json hk_function_json(const HKFunction& function);
nlohmann::json bound_report_json(const BoundReport& report);
nlohmann::json epsilon_row_json(const EpsilonRow& row);

/// Full document: engine version, settings, per-ring reports, epsilon table, exit status.
nlohmann::json report_json(const std::vector<BoundReport>& reports, const std::vector<EpsilonRow>& table,
                           const ReportSettings& settings);

/// Two-space indented JSON with a trailing newline.
std::string render_json(const nlohmann::json& document);

/// Column order of the per-check CSV fields.
const std::vector<std::string>& csv_check_columns();

/// One row per ring, a blank line, then the epsilon table with its own header.
std::string render_csv(const std::vector<BoundReport>& reports, const std::vector<EpsilonRow>& table);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(const std::string& text);

}  // namespace hkm
