#include "h2pf/runner.hpp"

#include <cmath>
#include <future>

#include "h2pf/csv.hpp"
#include "h2pf/model.hpp"
#include "h2pf/objective.hpp"

namespace h2pf {

namespace {

std::optional<double> pct_change(double base, double value) {
    if (base == 0.0) return std::nullopt;
    return (value - base) / std::abs(base) * 100.0;
}

std::string cell(const std::optional<double>& v) { return v ? fixed4(*v) : std::string("NA"); }

} // namespace

AuditFailure::AuditFailure(int n, AuditReport r)
    : std::runtime_error("case " + std::to_string(n) + " failed audit: " + audit_verdict(r)),
      case_number(n),
      report(std::move(r)) {}

bool CaseComparison::all_optimal() const {
    for (const auto& [n, r] : per_case) {
        if (!r.optimal()) return false;
    }
    return !per_case.empty();
}

std::vector<std::string> CaseComparison::ordering_violations() const {
    std::vector<std::string> out;
    const CaseResult* prev = nullptr;
    for (const auto& [n, r] : per_case) {
        if (!r.optimal()) continue;
        if (prev) {
            const double lo = prev->solution.objective_value;
            const double hi = r.solution.objective_value;
            if (lo - hi > 1e-6 * std::max(1.0, std::abs(hi))) {
                out.push_back("profit of case " + std::to_string(prev->case_number) + " (" + fixed4(lo) +
                              ") exceeds case " + std::to_string(n) + " (" + fixed4(hi) + ")");
            }
        }
        prev = &r;
    }
    return out;
}

bool CaseComparison::ordering_holds() const { return ordering_violations().empty(); }

ScenarioConfig case_scenario(const ScenarioConfig& cfg, int case_number) {
    ScenarioConfig out = cfg;
    out.case_config = with_case(cfg.case_config, case_number);
    if (out.case_config.ppa_scope == Scope::PerSite && !out.case_config.per_site_ppa_profiles) {
        throw InputError("case.per_site_ppa_profiles: required for case " + std::to_string(case_number));
    }
    return out;
}

CaseResult run_case(const ScenarioConfig& cfg, int case_number, const RunOptions& opts) {
    const ScenarioConfig scoped = case_scenario(cfg, case_number);
    const MilpProblem model = build_model(scoped);
    auto backend = make_backend(opts.backend);

    CaseResult r;
    r.case_number = case_number;
    r.solution = solve(model, opts.solve, *backend);
    if (r.optimal()) {
        r.audit = audit(scoped, r.solution, opts.audit_tolerance);
        if (!r.audit.passed()) throw AuditFailure(case_number, r.audit);
        r.summary = portfolio_summary(scoped, r.solution);
        r.green_share = r.summary->green_share;
        r.net_cost = objective_breakdown(scoped, r.solution).net_cost();
    }
    return r;
}

CaseComparison run_cases(const ScenarioConfig& cfg, const std::vector<int>& cases, const RunOptions& opts) {
    for (int n : cases) case_scenario(cfg, n); // fail early on bad input

    CaseComparison cmp;
    if (opts.concurrent && cases.size() > 1) {
        std::vector<std::future<CaseResult>> jobs;
        for (int n : cases) jobs.push_back(std::async(std::launch::async, [&cfg, n, &opts] { return run_case(cfg, n, opts); }));
        // Collect every job before rethrowing so no thread outlives the call.
        std::exception_ptr first_error;
        for (auto& job : jobs) {
            try {
                CaseResult r = job.get();
                cmp.per_case.emplace(r.case_number, std::move(r));
            } catch (...) {
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
    } else {
        for (int n : cases) {
            CaseResult r = run_case(cfg, n, opts);
            cmp.per_case.emplace(n, std::move(r));
        }
    }
    cmp.deltas = compute_deltas(cmp.per_case);
    return cmp;
}

std::vector<CaseDelta> compute_deltas(const std::map<int, CaseResult>& per_case) {
    std::vector<CaseDelta> out;
    if (per_case.empty()) return out;
    const CaseResult& base = per_case.begin()->second;
    if (!base.summary) return out;
    const PortfolioSummary& b = *base.summary;
    for (const auto& [n, r] : per_case) {
        if (n == base.case_number || !r.summary) continue;
        const PortfolioSummary& s = *r.summary;
        CaseDelta d;
        d.from_case = base.case_number;
        d.to_case = n;
        d.net_cost_pct = pct_change(base.net_cost, r.net_cost);
        d.bundled_kg_pct = pct_change(b.bundled_qty_kg, s.bundled_qty_kg);
        d.unbundled_kg_pct = pct_change(b.unbundled_qty_kg, s.unbundled_qty_kg);
        d.go_units_pct = pct_change(b.go_buy_units + b.go_sell_units, s.go_buy_units + s.go_sell_units);
        out.push_back(d);
    }
    return out;
}

const std::vector<std::string>& summary_columns() {
    static const std::vector<std::string> cols = {
        "case",          "vppa_qty_mwh",     "cfd_eur",          "pppa_qty_mwh",   "pppa_cost_eur",   "dam_buy_mwh",
        "dam_sell_mwh",  "dam_net_eur",      "bundled_qty_kg",   "bundled_rev_eur", "unbundled_qty_kg", "unbundled_rev_eur",
        "go_buy_units",  "go_sell_units",    "go_net_eur",       "green_pct",      "sum_eur"};
    return cols;
}

void write_summary_csv(const CaseComparison& cmp, std::ostream& out) {
    const auto& cols = summary_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& [n, r] : cmp.per_case) {
        out << n;
        if (!r.summary) {
            for (std::size_t i = 1; i < cols.size(); ++i) out << ",NA";
            out << '\n';
            continue;
        }
        const PortfolioSummary& s = *r.summary;
        const std::optional<double> green =
            s.green_share ? std::optional<double>(*s.green_share * 100.0) : std::nullopt;
        for (double v : {s.vppa_qty_mwh, s.cfd_eur, s.pppa_qty_mwh, s.pppa_cost_eur, s.dam_buy_mwh, s.dam_sell_mwh,
                         s.dam_net_eur, s.bundled_qty_kg, s.bundled_rev_eur, s.unbundled_qty_kg, s.unbundled_rev_eur,
                         s.go_buy_units, s.go_sell_units, s.go_net_eur}) {
            out << ',' << fixed4(v);
        }
        out << ',' << cell(green) << ',' << fixed4(s.sum_eur()) << '\n';
    }
}

void write_deltas_csv(const CaseComparison& cmp, std::ostream& out) {
    out << "from_case,to_case,net_cost_pct,bundled_kg_pct,unbundled_kg_pct,go_units_pct\n";
    for (const CaseDelta& d : cmp.deltas) {
        out << d.from_case << ',' << d.to_case << ',' << cell(d.net_cost_pct) << ',' << cell(d.bundled_kg_pct) << ','
            << cell(d.unbundled_kg_pct) << ',' << cell(d.go_units_pct) << '\n';
    }
}

} // namespace h2pf
