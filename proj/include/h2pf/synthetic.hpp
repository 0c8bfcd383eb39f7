#pragma once

// Bundled synthetic scenarios. Every generated instance is feasible under
// all three cases by construction: the daily GO caps are derived from the
// per-site certificate surplus and deficit implied by the Case-1 split.

#include <cstdint>

#include "h2pf/domain.hpp"

namespace h2pf {

/// Five sites, 24 hourly steps; sites 1 and 4 are fully inflexible.
/// Carries the proportional Case-1 split and Case-3 scoping.
ScenarioConfig reference_scenario();

struct RandomShape {
    std::size_t sites = 3;
    std::size_t hours = 24;
    double storage_probability = 0.7; // chance that a site has a battery
    double go_slack = 0.25;           // relative headroom added to the required GO caps
};

ScenarioConfig random_scenario(std::uint64_t seed, const RandomShape& shape);
ScenarioConfig random_scenario(std::uint64_t seed, std::size_t sites, std::size_t hours);

/// At most 2 sites and 2 hours with no more than `max_free_binaries`
/// binaries left once degenerate ones are pruned.
ScenarioConfig tiny_scenario(std::uint64_t seed, std::size_t max_free_binaries = 12);

/// Minimum daily GO purchases and sales (units) that make Case 1 feasible.
struct GoRequirement {
    double buy = 0.0;
    double sell = 0.0;
};
GoRequirement required_go_caps(const ScenarioConfig& cfg);

/// Removes every renewable and certificate source and sets the green
/// target to 1, so no schedule can cover the downstream demand.
ScenarioConfig without_green_supply(ScenarioConfig cfg);

} // namespace h2pf
