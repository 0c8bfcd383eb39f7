#include "h2pf/solver.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace h2pf {

namespace {

Solution to_solution(const MilpProblem& problem, RawResult raw) {
    Solution sol;
    sol.status = std::move(raw.status);
    sol.objective_value = raw.objective;
    if (raw.values.size() == problem.variables().size()) {
        for (std::size_t i = 0; i < raw.values.size(); ++i) {
            double v = raw.values[i];
            if (problem.variables()[i].integrality == Integrality::Binary) v = std::round(v);
            sol.assignment.emplace(problem.variables()[i].key, v);
        }
    }
    return sol;
}

BinaryPattern rounded_pattern(const MilpProblem& problem, const std::vector<double>& values) {
    BinaryPattern pattern;
    for (int idx : problem.binary_indices()) pattern[idx] = values[idx] >= 0.5 ? 1 : 0;
    return pattern;
}

} // namespace

const char* to_string(StatusKind kind) {
    switch (kind) {
    case StatusKind::Optimal: return "Optimal";
    case StatusKind::Infeasible: return "Infeasible";
    case StatusKind::Unbounded: return "Unbounded";
    case StatusKind::TimeLimit: return "TimeLimit";
    case StatusKind::Error: return "Error";
    }
    return "Error";
}

std::unique_ptr<SolverBackend> make_backend(const std::string& name) {
    if (name == "highs" || name.empty()) return make_highs_backend();
    throw InputError("unknown solver backend '" + name + "' (available: highs)");
}

std::string backend_name_from_env() {
    const char* env = std::getenv("H2PF_SOLVER");
    return env && *env ? std::string(env) : std::string("highs");
}

double Solution::value(const VarKey& key) const {
    auto it = assignment.find(key);
    if (it == assignment.end()) {
        throw std::out_of_range("solution has no value for " + std::string(kind_name(key.kind)) + " site " +
                                std::to_string(key.site) + " hour " + std::to_string(key.hour));
    }
    return it->second;
}

std::optional<double> Solution::find(const VarKey& key) const {
    auto it = assignment.find(key);
    if (it == assignment.end()) return std::nullopt;
    return it->second;
}

Solution solve(const MilpProblem& problem, const SolveOptions& opts) {
    auto backend = make_backend(backend_name_from_env());
    return solve(problem, opts, *backend);
}

Solution solve(const MilpProblem& problem, const SolveOptions& opts, SolverBackend& backend) {
    if (opts.relative_gap < 0.0) throw std::invalid_argument("relative_gap must be >= 0");
    if (!(opts.time_limit_s > 0.0)) throw std::invalid_argument("time_limit_s must be > 0");

    RawResult raw = backend.run(problem, opts);
    const bool has_point = raw.values.size() == problem.variables().size();
    const bool usable = raw.status.kind == StatusKind::Optimal || raw.status.kind == StatusKind::TimeLimit;
    if (opts.polish && usable && has_point && problem.binary_count() > 0) {
        MilpProblem fixed = fix_binaries(problem, rounded_pattern(problem, raw.values));
        RawResult lp = backend.run(fixed, opts);
        if (lp.status.kind == StatusKind::Optimal && lp.values.size() == problem.variables().size()) {
            lp.status = raw.status;
            raw = std::move(lp);
        }
    }
    return to_solution(problem, std::move(raw));
}

MilpProblem fix_binaries(const MilpProblem& problem, const BinaryPattern& pattern) {
    MilpProblem fixed = problem;
    for (int idx : problem.binary_indices()) {
        auto it = pattern.find(idx);
        if (it == pattern.end()) {
            throw std::invalid_argument("pattern does not cover binary " + problem.variables()[idx].name);
        }
        if (it->second != 0 && it->second != 1) {
            throw std::invalid_argument("pattern value for " + problem.variables()[idx].name + " is not 0/1");
        }
        const double v = static_cast<double>(it->second);
        fixed.set_bounds(idx, v, v);
        fixed.set_integrality(idx, Integrality::Continuous);
    }
    for (const auto& [idx, value] : pattern) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= problem.variables().size() ||
            problem.variables()[idx].integrality != Integrality::Binary) {
            throw std::invalid_argument("pattern entry " + std::to_string(idx) + " is not a binary column");
        }
    }
    return fixed;
}

Solution fix_binaries_and_resolve(const MilpProblem& problem, const BinaryPattern& pattern,
                                  const SolveOptions& opts) {
    auto backend = make_backend(backend_name_from_env());
    return fix_binaries_and_resolve(problem, pattern, opts, *backend);
}

Solution fix_binaries_and_resolve(const MilpProblem& problem, const BinaryPattern& pattern,
                                  const SolveOptions& opts, SolverBackend& backend) {
    MilpProblem fixed = fix_binaries(problem, pattern);
    return to_solution(problem, backend.run(fixed, opts));
}

double max_row_violation(const MilpProblem& problem, const std::vector<double>& values) {
    double worst = 0.0;
    for (const Constraint& c : problem.constraints()) {
        double lhs = 0.0;
        for (const LinearTerm& t : c.terms) lhs += t.coef * values.at(t.var);
        double viol = 0.0;
        switch (c.relation) {
        case Relation::LessEqual: viol = std::max(0.0, lhs - c.rhs); break;
        case Relation::Equal: viol = std::abs(lhs - c.rhs); break;
        case Relation::GreaterEqual: viol = std::max(0.0, c.rhs - lhs); break;
        }
        worst = std::max(worst, viol / std::max(1.0, std::abs(c.rhs)));
    }
    return worst;
}

} // namespace h2pf
