#include "h2pf/oracle.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace h2pf {

std::vector<int> degenerate_binaries(const ScenarioConfig& cfg, const MilpProblem& model) {
    std::vector<int> out;
    for (int idx : model.binary_indices()) {
        const VarKey& key = model.variables()[idx].key;
        const SiteSpec& s = cfg.sites.at(key.site);
        double gated_bound = 1.0;
        switch (key.kind) {
        case VarKind::i_EES_Ch: gated_bound = s.storage.max_charge_mw; break;
        case VarKind::i_EES_Dis: gated_bound = s.storage.max_discharge_mw; break;
        case VarKind::i_GO_Sell: gated_bound = cfg.policy.go_sell_cap; break;
        case VarKind::i_GO_Buy: gated_bound = cfg.policy.go_buy_cap; break;
        case VarKind::i_DAM_Buy:
        case VarKind::i_DAM_Sell: gated_bound = s.grid_limit_mw; break;
        default: break;
        }
        if (gated_bound == 0.0) out.push_back(idx);
    }
    return out;
}

OracleResult oracle_solve(const ScenarioConfig& cfg, const SolveOptions& opts) {
    auto backend = make_backend(backend_name_from_env());
    return oracle_solve(cfg, opts, *backend);
}

OracleResult oracle_solve(const ScenarioConfig& cfg, const SolveOptions& opts, SolverBackend& backend) {
    const MilpProblem model = build_model(cfg);
    const std::vector<int> binaries = model.binary_indices();
    if (binaries.size() > kOracleBinaryBudget) {
        throw InputError("oracle budget exceeded: " + std::to_string(binaries.size()) + " binaries (limit " +
                         std::to_string(kOracleBinaryBudget) + ")");
    }

    OracleResult result;
    result.binary_count = binaries.size();
    const std::vector<int> fixed = degenerate_binaries(cfg, model);
    result.pruned = fixed.size();

    std::vector<int> free;
    std::ranges::copy_if(binaries, std::back_inserter(free),
                         [&](int idx) { return std::ranges::find(fixed, idx) == fixed.end(); });

    BinaryPattern pattern;
    for (int idx : fixed) pattern[idx] = 0;

    const std::uint64_t count = std::uint64_t{1} << free.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (std::size_t i = 0; i < free.size(); ++i) pattern[free[i]] = static_cast<int>((mask >> i) & 1U);
        Solution sol = fix_binaries_and_resolve(model, pattern, opts, backend);
        ++result.patterns_tried;
        switch (sol.status.kind) {
        case StatusKind::Optimal:
            if (!result.feasible || sol.objective_value > result.objective) {
                result.feasible = true;
                result.objective = sol.objective_value;
                result.best_pattern = pattern;
                result.best = std::move(sol);
            }
            break;
        case StatusKind::Infeasible: ++result.infeasible_patterns; break;
        default:
            throw std::runtime_error("oracle: pattern " + std::to_string(mask) + " returned " +
                                     to_string(sol.status.kind) + ": " + sol.status.message);
        }
    }
    return result;
}

} // namespace h2pf
