#pragma once

#include <filesystem>

#include <json.hpp>

#include "h2pf/domain.hpp"
#include "h2pf/solver.hpp"

namespace h2pf {

/// `{"case", "status", "message", "objective", "values": {variable name: value}}`.
/// Values keep full double precision so the file can be re-audited.
nlohmann::json solution_to_json(const ScenarioConfig& cfg, const Solution& sol, int case_number);

/// Inverse of solution_to_json. Unknown variable names raise InputError;
/// missing ones are left out so the auditor can report them.
Solution solution_from_json(const ScenarioConfig& cfg, const nlohmann::json& doc);

struct LoadedSolution {
    Solution solution;
    int case_number = 0;
};

LoadedSolution load_solution(const ScenarioConfig& cfg, const std::filesystem::path& path);

} // namespace h2pf
