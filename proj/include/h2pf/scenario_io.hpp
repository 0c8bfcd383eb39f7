#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "h2pf/domain.hpp"

namespace h2pf {

/// Parses a scenario document. Series may be inline arrays or
/// `{"csv": "relative/path.csv"}` references resolved against `base_dir`.
/// Throws InputError naming the first offending field.
ScenarioConfig scenario_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

ScenarioConfig load_scenario(const std::filesystem::path& path);

nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

void save_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path);

/// Reads a two-column (hour, value) CSV with a header row. Hours must run 0..n-1 in order.
Series read_series_csv(const std::filesystem::path& path);

/// Full-precision numeric parse; throws InputError mentioning `field` on failure.
double parse_number(const std::string& text, const std::string& field);

} // namespace h2pf
