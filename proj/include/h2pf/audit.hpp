#pragma once

// Independent feasibility check of a schedule. Every equation is recomputed
// from the scenario parameters and the assignment; the model-builder's
// constraint matrix is never consulted.

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "h2pf/domain.hpp"
#include "h2pf/solver.hpp"

namespace h2pf {

struct AuditEntry {
    std::string family;   // eq3 .. eq37, eq2, boundary_soc, bounds, missing_variable
    std::string tag;      // full instance tag, identical to the model row tag where one exists
    std::string scope;    // site id or PORTFOLIO
    std::string hour;     // "7" or "DAY"
    double residual = 0.0;
    double tolerance = 0.0;
    bool inequality = false;
    bool pass = false;
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    std::optional<double> green_share; // empty when no hydrogen is produced
    double worst_residual = 0.0;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::vector<const AuditEntry*> failures() const;
    [[nodiscard]] std::set<std::string> failed_families() const;
    /// Entry counts per family, excluding `bounds` and `missing_variable`.
    [[nodiscard]] std::map<std::string, std::size_t> equation_census() const;
};

/// Audits `sol` against `cfg` under the scoping in `cfg.case_config`.
/// Residuals are scaled by max(1, |rhs|); inequalities report positive excess only.
AuditReport audit(const ScenarioConfig& cfg, const Solution& sol, double tol = 1e-6);

/// Certified electricity over hydrogen-equivalent electricity, portfolio-wide.
/// Empty when no hydrogen is produced.
std::optional<double> green_share(const ScenarioConfig& cfg, const Solution& sol);

/// Same ratio restricted to one site.
std::optional<double> site_green_share(const ScenarioConfig& cfg, const Solution& sol, std::size_t site);

/// CSV with header `tag,scope,hour,residual,pass`.
void write_audit_csv(const AuditReport& report, std::ostream& out);

/// One machine-readable line: `AUDIT PASS entries=N failures=0 worst=...`.
std::string audit_verdict(const AuditReport& report);

} // namespace h2pf
