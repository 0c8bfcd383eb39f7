#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "h2pf/model.hpp"

namespace h2pf {

struct SolveOptions {
    double relative_gap = 1e-9;
    double time_limit_s = 60.0;
    int threads_hint = 1;
    int random_seed = 0;

    /// After a MIP solve, fix the rounded binaries and re-solve the LP so
    /// the returned continuous values are exactly consistent with them.
    bool polish = true;
};

enum class StatusKind { Optimal, Infeasible, Unbounded, TimeLimit, Error };

const char* to_string(StatusKind kind);

struct SolveStatus {
    StatusKind kind = StatusKind::Error;
    std::string message;
};

/// What a backend hands back: status, objective and one value per model column.
struct RawResult {
    SolveStatus status;
    double objective = 0.0;
    std::vector<double> values; // empty unless a primal point is available
};

/// Exact MIP backend. A single call owns its solver instance for the whole solve.
class SolverBackend {
public:
    virtual ~SolverBackend() = default;
    [[nodiscard]] virtual std::string name() const = 0;
    virtual RawResult run(const MilpProblem& problem, const SolveOptions& opts) = 0;
};

std::unique_ptr<SolverBackend> make_highs_backend();

/// Backend by name ("highs"); throws InputError for unknown names.
std::unique_ptr<SolverBackend> make_backend(const std::string& name);

/// Name from the H2PF_SOLVER environment variable, defaulting to "highs".
std::string backend_name_from_env();

struct Solution {
    SolveStatus status;
    double objective_value = 0.0;
    std::map<VarKey, double> assignment;

    [[nodiscard]] bool has_assignment() const { return !assignment.empty(); }
    [[nodiscard]] double value(const VarKey& key) const; // throws std::out_of_range
    [[nodiscard]] std::optional<double> find(const VarKey& key) const;
    [[nodiscard]] double value(VarKind kind, std::size_t site, std::size_t hour) const {
        return value({kind, static_cast<int>(site), static_cast<int>(hour)});
    }
    [[nodiscard]] double portfolio(VarKind kind, std::size_t hour) const {
        return value({kind, kPortfolio, static_cast<int>(hour)});
    }
};

Solution solve(const MilpProblem& problem, const SolveOptions& opts = {});
Solution solve(const MilpProblem& problem, const SolveOptions& opts, SolverBackend& backend);

/// Binary column index -> 0/1.
using BinaryPattern = std::map<int, int>;

/// LP optimum with every binary fixed by `pattern`. Throws std::invalid_argument
/// when the pattern misses a binary or holds a value other than 0/1.
Solution fix_binaries_and_resolve(const MilpProblem& problem, const BinaryPattern& pattern,
                                  const SolveOptions& opts = {});
Solution fix_binaries_and_resolve(const MilpProblem& problem, const BinaryPattern& pattern,
                                  const SolveOptions& opts, SolverBackend& backend);

/// Copy of `problem` with binaries fixed by `pattern` and marked continuous.
MilpProblem fix_binaries(const MilpProblem& problem, const BinaryPattern& pattern);

/// Largest absolute row violation of `values`, each row divided by max(1, |rhs|).
double max_row_violation(const MilpProblem& problem, const std::vector<double>& values);

} // namespace h2pf
