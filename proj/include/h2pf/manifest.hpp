#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "h2pf/domain.hpp"
#include "h2pf/runner.hpp"

namespace h2pf {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
    std::filesystem::path scenario_path;
    std::vector<int> cases;
    RunOptions options;
    std::filesystem::path output_dir;
    std::string tool_version = kToolVersion;
    std::string timestamp;        // UTC, ISO 8601
    std::string scenario_sha256;  // raw bytes of the scenario file
    std::string resolved_sha256;  // canonical JSON of the loaded scenario, CSV series included
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);
std::string utc_timestamp();

RunManifest make_manifest(const std::filesystem::path& scenario_path, const ScenarioConfig& cfg,
                          std::vector<int> cases, const RunOptions& opts, const std::filesystem::path& out_dir);

nlohmann::json manifest_to_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::filesystem::path& path);

} // namespace h2pf
