#include "h2pf/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "h2pf/audit.hpp"
#include "h2pf/ingest.hpp"
#include "h2pf/lp_format.hpp"
#include "h2pf/manifest.hpp"
#include "h2pf/model.hpp"
#include "h2pf/reporting.hpp"
#include "h2pf/runner.hpp"
#include "h2pf/scenario_io.hpp"
#include "h2pf/solution_io.hpp"

namespace h2pf {

namespace {

RunOptions run_options(double gap, double time_limit) {
    RunOptions opts;
    opts.solve.relative_gap = gap;
    opts.solve.time_limit_s = time_limit;
    opts.solve.threads_hint = 1;
    opts.backend = backend_name_from_env();
    return opts;
}

int status_exit(StatusKind kind) {
    switch (kind) {
    case StatusKind::Optimal: return kExitOk;
    case StatusKind::Infeasible: return kExitInfeasible;
    default: return kExitSolverError;
    }
}

template <class Fn>
void write_file(const std::filesystem::path& path, Fn&& fn) {
    std::ofstream f = open_output(path);
    fn(f);
    if (!f) throw IoError("write failed for " + path.string());
}

void write_case_outputs(const ScenarioConfig& cfg, const CaseResult& r, const std::filesystem::path& dir) {
    const ScenarioConfig scoped = case_scenario(cfg, r.case_number);
    write_file(dir / "solution.json",
               [&](std::ostream& o) { o << solution_to_json(scoped, r.solution, r.case_number).dump(1) << '\n'; });
    if (r.optimal()) {
        write_file(dir / "audit.csv", [&](std::ostream& o) { write_audit_csv(r.audit, o); });
        export_schedules(scoped, r.solution, dir / "schedules");
    }
}

// Shared error mapping for every command.
template <class Fn>
int guarded(std::ostream& err, Fn&& body) {
    try {
        return body();
    } catch (const AuditFailure& e) {
        err << "error: " << e.what() << '\n';
        for (const AuditEntry* f : e.report.failures()) {
            err << "  " << f->tag << " residual " << f->residual << '\n';
        }
        return kExitAuditFailure;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitSolverError;
    }
}

} // namespace

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const ScenarioConfig cfg = load_scenario(args.scenario);
        const RunOptions opts = run_options(args.gap, args.time_limit);
        const ScenarioConfig scoped = case_scenario(cfg, args.case_number);
        if (args.lp_file) write_lp(build_model(scoped), *args.lp_file);

        CaseComparison cmp;
        try {
            cmp.per_case.emplace(args.case_number, run_case(cfg, args.case_number, opts));
        } catch (const AuditFailure& e) {
            write_file(args.out / "audit.csv", [&](std::ostream& o) { write_audit_csv(e.report, o); });
            throw;
        }
        const CaseResult& r = cmp.per_case.at(args.case_number);
        write_case_outputs(cfg, r, args.out);
        write_file(args.out / "summary.csv", [&](std::ostream& o) { write_summary_csv(cmp, o); });
        write_manifest(make_manifest(args.scenario, cfg, {args.case_number}, opts, args.out), args.out / "manifest.json");

        out << "case " << args.case_number << ": " << to_string(r.solution.status.kind);
        if (r.optimal()) out << " profit=" << r.solution.objective_value << " net_cost=" << r.net_cost;
        out << '\n';
        if (r.optimal()) out << audit_verdict(r.audit) << '\n';
        if (!r.optimal()) err << "case " << args.case_number << ": " << r.solution.status.message << '\n';
        return status_exit(r.solution.status.kind);
    });
}

int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const ScenarioConfig cfg = load_scenario(args.scenario);
        const RunOptions opts = run_options(args.gap, args.time_limit);
        const std::vector<int> cases = {1, 2, 3};
        const CaseComparison cmp = run_cases(cfg, cases, opts);

        for (const auto& [n, r] : cmp.per_case) write_case_outputs(cfg, r, args.out / ("case" + std::to_string(n)));
        write_file(args.out / "summary.csv", [&](std::ostream& o) { write_summary_csv(cmp, o); });
        write_file(args.out / "deltas.csv", [&](std::ostream& o) { write_deltas_csv(cmp, o); });
        write_manifest(make_manifest(args.scenario, cfg, cases, opts, args.out), args.out / "manifest.json");

        int code = kExitOk;
        for (const auto& [n, r] : cmp.per_case) {
            out << "case " << n << ": " << to_string(r.solution.status.kind);
            if (r.optimal()) out << " net_cost=" << r.net_cost;
            out << '\n';
            if (!r.optimal()) {
                err << "case " << n << ": " << r.solution.status.message << '\n';
                const int c = status_exit(r.solution.status.kind);
                if (code == kExitOk || c == kExitSolverError) code = c;
            }
        }
        if (code != kExitOk) return code;
        for (const std::string& v : cmp.ordering_violations()) err << "ordering violated: " << v << '\n';
        return cmp.ordering_holds() ? kExitOk : kExitAuditFailure;
    });
}

int cmd_audit(const AuditArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const ScenarioConfig cfg = load_scenario(args.scenario);
        LoadedSolution loaded = load_solution(cfg, args.solution);
        const int n = args.case_number.value_or(loaded.case_number);
        const ScenarioConfig scoped = n == 0 ? cfg : case_scenario(cfg, n);
        const AuditReport report = audit(scoped, loaded.solution, args.tol);
        if (args.out) write_file(*args.out, [&](std::ostream& o) { write_audit_csv(report, o); });
        out << audit_verdict(report) << '\n';
        for (const AuditEntry* f : report.failures()) err << "  " << f->tag << " residual " << f->residual << '\n';
        return report.passed() ? kExitOk : kExitAuditFailure;
    });
}

int cmd_ingest(const IngestArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const ScenarioConfig cfg = ingest_raw(args.raw);
        save_scenario(cfg, args.out);
        out << "wrote " << args.out.string() << " (" << cfg.site_count() << " sites, " << cfg.hours() << " steps)\n";
        return kExitOk;
    });
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Day-ahead portfolio scheduling for hydrogen producers"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    std::string lp_file;
    auto* solve = app.add_subcommand("solve", "Solve one case, audit it and export schedules");
    solve->add_option("--scenario", solve_args.scenario, "Scenario JSON")->required();
    solve->add_option("--case", solve_args.case_number, "Case 1, 2 or 3")->check(CLI::Range(1, 3));
    solve->add_option("--out", solve_args.out, "Output directory")->required();
    solve->add_option("--gap", solve_args.gap, "Relative MIP gap")->check(CLI::NonNegativeNumber);
    solve->add_option("--time-limit", solve_args.time_limit, "Time limit in seconds")->check(CLI::PositiveNumber);
    solve->add_option("--lp", lp_file, "Also write the model in LP format to this file");

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare", "Solve cases 1 to 3 and write the comparison");
    compare->add_option("--scenario", compare_args.scenario, "Scenario JSON")->required();
    compare->add_option("--out", compare_args.out, "Output directory")->required();
    compare->add_option("--gap", compare_args.gap, "Relative MIP gap")->check(CLI::NonNegativeNumber);
    compare->add_option("--time-limit", compare_args.time_limit, "Time limit in seconds")->check(CLI::PositiveNumber);

    AuditArgs audit_args;
    int audit_case = 0;
    std::string audit_out;
    auto* audit_cmd = app.add_subcommand("audit", "Check a solution file against the scenario equations");
    audit_cmd->add_option("--scenario", audit_args.scenario, "Scenario JSON")->required();
    audit_cmd->add_option("--solution", audit_args.solution, "Solution JSON written by solve")->required();
    audit_cmd->add_option("--tol", audit_args.tol, "Tolerance on scaled residuals")->check(CLI::PositiveNumber);
    audit_cmd->add_option("--case", audit_case, "Override the case recorded in the solution")->check(CLI::Range(1, 3));
    audit_cmd->add_option("--out", audit_out, "Write the audit CSV here");

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "Convert a raw dataset directory into a scenario JSON");
    ingest->add_option("--raw", ingest_args.raw, "Raw dataset directory")->required();
    ingest->add_option("--out", ingest_args.out, "Scenario JSON to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    if (*solve) {
        if (!lp_file.empty()) solve_args.lp_file = lp_file;
        return cmd_solve(solve_args, std::cout, std::cerr);
    }
    if (*compare) return cmd_compare(compare_args, std::cout, std::cerr);
    if (*audit_cmd) {
        if (audit_case != 0) audit_args.case_number = audit_case;
        if (!audit_out.empty()) audit_args.out = audit_out;
        return cmd_audit(audit_args, std::cout, std::cerr);
    }
    return cmd_ingest(ingest_args, std::cout, std::cerr);
}

} // namespace h2pf
