// Adapter onto the HiGHS MIP/LP solver.

#include <cmath>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include <Highs.h>

#include "h2pf/solver.hpp"

namespace h2pf {

namespace {

double to_highs(double v) {
    if (std::isinf(v)) return v > 0 ? kHighsInf : -kHighsInf;
    return v;
}

HighsLp to_highs_lp(const MilpProblem& problem) {
    const auto& vars = problem.variables();
    const auto& rows = problem.constraints();
    HighsLp lp;
    lp.num_col_ = static_cast<HighsInt>(vars.size());
    lp.num_row_ = static_cast<HighsInt>(rows.size());
    lp.sense_ = ObjSense::kMaximize;
    lp.offset_ = problem.objective_offset();
    lp.col_cost_ = problem.objective();
    lp.col_lower_.reserve(vars.size());
    lp.col_upper_.reserve(vars.size());
    bool any_integer = false;
    for (const VariableRef& v : vars) {
        lp.col_lower_.push_back(to_highs(v.lower));
        lp.col_upper_.push_back(to_highs(v.upper));
        any_integer = any_integer || v.integrality == Integrality::Binary;
    }
    if (any_integer) {
        lp.integrality_.reserve(vars.size());
        for (const VariableRef& v : vars) {
            lp.integrality_.push_back(v.integrality == Integrality::Binary ? HighsVarType::kInteger
                                                                          : HighsVarType::kContinuous);
        }
    }

    // Column-wise assembly. Rows are merged first so repeated terms add up.
    std::vector<std::vector<std::pair<HighsInt, double>>> columns(vars.size());
    lp.row_lower_.reserve(rows.size());
    lp.row_upper_.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Constraint& c = rows[r];
        std::map<int, double> merged;
        for (const LinearTerm& t : c.terms) merged[t.var] += t.coef;
        for (const auto& [var, coef] : merged) {
            if (coef != 0.0) columns[var].emplace_back(static_cast<HighsInt>(r), coef);
        }
        switch (c.relation) {
        case Relation::LessEqual:
            lp.row_lower_.push_back(-kHighsInf);
            lp.row_upper_.push_back(c.rhs);
            break;
        case Relation::Equal:
            lp.row_lower_.push_back(c.rhs);
            lp.row_upper_.push_back(c.rhs);
            break;
        case Relation::GreaterEqual:
            lp.row_lower_.push_back(c.rhs);
            lp.row_upper_.push_back(kHighsInf);
            break;
        }
    }
    lp.a_matrix_.format_ = MatrixFormat::kColwise;
    lp.a_matrix_.num_col_ = lp.num_col_;
    lp.a_matrix_.num_row_ = lp.num_row_;
    lp.a_matrix_.start_.assign(1, 0);
    for (const auto& col : columns) {
        for (const auto& [row, coef] : col) {
            lp.a_matrix_.index_.push_back(row);
            lp.a_matrix_.value_.push_back(coef);
        }
        lp.a_matrix_.start_.push_back(static_cast<HighsInt>(lp.a_matrix_.index_.size()));
    }
    return lp;
}

class HighsBackend final : public SolverBackend {
public:
    [[nodiscard]] std::string name() const override { return "highs"; }

    RawResult run(const MilpProblem& problem, const SolveOptions& opts) override {
        RawResult out;
        if (problem.variables().empty()) {
            out.status = {problem.constraints().empty() ? StatusKind::Optimal : StatusKind::Error,
                          "empty model"};
            out.objective = problem.objective_offset();
            return out;
        }
        const bool is_mip = problem.binary_count() > 0;

        auto highs = std::make_unique<Highs>();
        configure(*highs, opts);
        if (highs->passModel(to_highs_lp(problem)) == HighsStatus::kError) {
            out.status = {StatusKind::Error, "HiGHS rejected the model"};
            return out;
        }
        if (highs->run() == HighsStatus::kError) {
            out.status = {StatusKind::Error, "HiGHS run failed: " +
                                                 highs->modelStatusToString(highs->getModelStatus())};
            return out;
        }
        HighsModelStatus ms = highs->getModelStatus();
        if (ms == HighsModelStatus::kUnboundedOrInfeasible) {
            // Presolve could not tell which; settle it without presolve.
            highs->setOptionValue("presolve", "off");
            highs->run();
            ms = highs->getModelStatus();
        }

        const HighsInfo& info = highs->getInfo();
        const bool has_point = info.primal_solution_status == kSolutionStatusFeasible;
        switch (ms) {
        case HighsModelStatus::kOptimal:
            out.status = {StatusKind::Optimal, is_mip ? "optimal within relative gap" : "optimal"};
            break;
        case HighsModelStatus::kInfeasible:
            out.status = {StatusKind::Infeasible, "infeasible"};
            break;
        case HighsModelStatus::kUnbounded:
        case HighsModelStatus::kUnboundedOrInfeasible:
            out.status = {StatusKind::Unbounded, highs->modelStatusToString(ms)};
            break;
        case HighsModelStatus::kTimeLimit:
        case HighsModelStatus::kIterationLimit:
        case HighsModelStatus::kSolutionLimit:
            out.status = {StatusKind::TimeLimit,
                          has_point ? "limit reached; best incumbent returned" : "limit reached; no incumbent"};
            break;
        default:
            out.status = {StatusKind::Error, "HiGHS: " + highs->modelStatusToString(ms)};
            break;
        }
        const bool keep_point =
            has_point && (out.status.kind == StatusKind::Optimal || out.status.kind == StatusKind::TimeLimit);
        if (keep_point) {
            out.values = highs->getSolution().col_value;
            out.objective = info.objective_function_value;
        }
        return out;
    }

private:
    static void configure(Highs& h, const SolveOptions& opts) {
        h.setOptionValue("output_flag", false);
        h.setOptionValue("log_to_console", false);
        h.setOptionValue("mip_rel_gap", opts.relative_gap);
        h.setOptionValue("time_limit", opts.time_limit_s);
        h.setOptionValue("random_seed", static_cast<HighsInt>(opts.random_seed));
        h.setOptionValue("primal_feasibility_tolerance", 1e-9);
        h.setOptionValue("dual_feasibility_tolerance", 1e-9);
        h.setOptionValue("mip_feasibility_tolerance", 1e-9);
        if (opts.threads_hint > 0) h.setOptionValue("threads", static_cast<HighsInt>(opts.threads_hint));
    }
};

} // namespace

std::unique_ptr<SolverBackend> make_highs_backend() { return std::make_unique<HighsBackend>(); }

} // namespace h2pf
