#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include "h2pf/model.hpp"

namespace h2pf {

/// Maps a variable name or row tag onto the CPLEX LP name alphabet:
/// `eq4[site-2][t=7]` becomes `eq4(site~2)(t7)`.
std::string lp_safe_name(std::string_view name);

/// Writes `model` in CPLEX LP syntax. Row tags become row names.
void write_lp(const MilpProblem& model, std::ostream& out);
void write_lp(const MilpProblem& model, const std::filesystem::path& path);

} // namespace h2pf
