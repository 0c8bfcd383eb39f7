#pragma once

// Exhaustive reference optimizer for tiny instances: every binary pattern is
// fixed in turn and the remaining LP solved. No bounding, so the result does
// not depend on any branch-and-bound logic.

#include <cstddef>
#include <cstdint>

#include "h2pf/domain.hpp"
#include "h2pf/solver.hpp"

namespace h2pf {

inline constexpr std::size_t kOracleBinaryBudget = 24;

struct OracleResult {
    bool feasible = false;
    double objective = 0.0;          // max over feasible patterns; meaningless when !feasible
    BinaryPattern best_pattern;      // covers every binary, pruned ones included
    Solution best;                   // LP optimum under best_pattern
    std::uint64_t patterns_tried = 0;      // 2^(binaries left after pruning)
    std::uint64_t infeasible_patterns = 0;
    std::size_t binary_count = 0;
    std::size_t pruned = 0;          // binaries fixed to 0 because their gated bound is 0
};

/// Binaries whose gated continuous variable has a zero upper bound
/// (charge/discharge rate 0, GO cap 0). Both settings are equivalent, so the
/// oracle fixes them to 0.
std::vector<int> degenerate_binaries(const ScenarioConfig& cfg, const MilpProblem& model);

/// Throws InputError when the model has more than kOracleBinaryBudget binaries.
OracleResult oracle_solve(const ScenarioConfig& cfg, const SolveOptions& opts = {});
OracleResult oracle_solve(const ScenarioConfig& cfg, const SolveOptions& opts, SolverBackend& backend);

} // namespace h2pf
