#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace h2pf {

enum ExitCode : int {
    kExitOk = 0,
    kExitInfeasible = 2,
    kExitAuditFailure = 3,  // also a broken case ordering in `compare`
    kExitInputError = 4,    // unreadable, malformed or invalid input; unwritable output
    kExitSolverError = 5,   // unbounded, time limit without proof, backend error
};

struct SolveArgs {
    std::filesystem::path scenario;
    int case_number = 3;
    std::filesystem::path out;
    double gap = 1e-9;
    double time_limit = 60.0;
    std::optional<std::filesystem::path> lp_file;
};

struct CompareArgs {
    std::filesystem::path scenario;
    std::filesystem::path out;
    double gap = 1e-9;
    double time_limit = 60.0;
};

struct AuditArgs {
    std::filesystem::path scenario;
    std::filesystem::path solution;
    double tol = 1e-6;
    std::optional<int> case_number; // overrides the case recorded in the solution file
    std::optional<std::filesystem::path> out;
};

struct IngestArgs {
    std::filesystem::path raw;
    std::filesystem::path out;
};

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err);
int cmd_audit(const AuditArgs& args, std::ostream& out, std::ostream& err);
int cmd_ingest(const IngestArgs& args, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to one of the commands above.
int run_cli(int argc, char** argv);

} // namespace h2pf
