#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "h2pf/audit.hpp"
#include "h2pf/domain.hpp"
#include "h2pf/reporting.hpp"
#include "h2pf/solver.hpp"

namespace h2pf {

struct RunOptions {
    SolveOptions solve;
    std::string backend = "highs";
    double audit_tolerance = 1e-6;
    bool concurrent = true; // one thread per case
};

struct CaseResult {
    int case_number = 0;
    Solution solution;
    AuditReport audit;
    std::optional<PortfolioSummary> summary; // present iff the case solved to Optimal
    std::optional<double> green_share;
    double net_cost = 0.0;                   // cost convention: -profit

    [[nodiscard]] bool optimal() const { return solution.status.kind == StatusKind::Optimal; }
};

/// Percentage change from the base case to `to_case`; empty when the base value is 0.
struct CaseDelta {
    int from_case = 0;
    int to_case = 0;
    std::optional<double> net_cost_pct;
    std::optional<double> bundled_kg_pct;
    std::optional<double> unbundled_kg_pct;
    std::optional<double> go_units_pct; // GO purchases plus sales
};

struct CaseComparison {
    std::map<int, CaseResult> per_case;
    std::vector<CaseDelta> deltas;

    [[nodiscard]] bool all_optimal() const;
    /// Profit non-decreasing with the case number among the optimal cases,
    /// up to 1e-6 relative.
    [[nodiscard]] bool ordering_holds() const;
    [[nodiscard]] std::vector<std::string> ordering_violations() const;
};

/// Raised when a returned solution fails the audit.
class AuditFailure : public std::runtime_error {
public:
    AuditFailure(int case_number, AuditReport report);
    int case_number;
    AuditReport report;
};

/// Scenario with the scoping of `case_number` applied.
ScenarioConfig case_scenario(const ScenarioConfig& cfg, int case_number);

/// Builds, solves and audits a single case.
CaseResult run_case(const ScenarioConfig& cfg, int case_number, const RunOptions& opts = {});

/// Solves each case, audits every optimal solution, and derives deltas
/// against Case 1 (or the lowest case run). Throws InputError for unknown
/// cases or a missing Case-1 split, and AuditFailure when an audit fails.
CaseComparison run_cases(const ScenarioConfig& cfg, const std::vector<int>& cases, const RunOptions& opts = {});

std::vector<CaseDelta> compute_deltas(const std::map<int, CaseResult>& per_case);

/// Header row of summary.csv.
const std::vector<std::string>& summary_columns();
void write_summary_csv(const CaseComparison& cmp, std::ostream& out);
void write_deltas_csv(const CaseComparison& cmp, std::ostream& out);

} // namespace h2pf
