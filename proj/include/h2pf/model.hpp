#pragma once

// Solver-agnostic MILP for the day-ahead portfolio schedule.
//
// Rows are tagged `<family>[<scope>][t=<hour>]`, where family is one of
// eq2..eq37 or boundary_soc and scope is a site id or PORTFOLIO. Daily rows
// carry `[DAY]` instead of an hour; two-sided families append `[lo]`/`[hi]`.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "h2pf/domain.hpp"

namespace h2pf {

enum class VarKind : std::uint8_t {
    // per site and hour, continuous
    p_EL,
    p_Local,
    p_PPPA,
    p_VPPA,
    p_DAM_Buy,
    p_DAM_Sell,
    p_EES,
    p_Ch,
    p_Dis,
    e_EES,
    h_EL,
    h_BD,
    h_UBD,
    h_DSP,
    n_GO_VPPA,
    n_GO_PPPA,
    n_GO_Local,
    n_GO_Buy,
    n_GO_Sell,
    n_GO_BD,
    n_GO_DSP,
    // per site and hour, binary
    i_DAM_Buy,
    i_DAM_Sell,
    i_EES_Ch,
    i_EES_Dis,
    i_GO_Sell,
    i_GO_Buy,
    // portfolio, per hour
    P_PPPA_pf,
    P_VPPA_pf,
    p_DAM_Buy_pf,
    p_DAM_Sell_pf,
    h_BD_pf,
    h_UBD_pf,
    n_GO_Sell_pf,
    n_GO_Buy_pf,
    c_CfD,
};

inline constexpr std::size_t kVarKindCount = static_cast<std::size_t>(VarKind::c_CfD) + 1;
inline constexpr std::size_t kSiteContinuousKinds = 21;
inline constexpr std::size_t kSiteBinaryKinds = 6;
inline constexpr std::size_t kPortfolioKinds = 9;

std::string_view kind_name(VarKind kind);
std::optional<VarKind> kind_from_name(std::string_view name);
bool is_site_kind(VarKind kind);
bool is_binary_kind(VarKind kind);

/// Site index used for portfolio-level variables.
inline constexpr int kPortfolio = -1;

struct VarKey {
    VarKind kind{};
    int site = kPortfolio;
    int hour = 0;

    auto operator<=>(const VarKey&) const = default;
};

enum class Integrality { Continuous, Binary };

struct VariableRef {
    VarKey key;
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
    Integrality integrality = Integrality::Continuous;
};

struct LinearTerm {
    int var = 0;
    double coef = 0.0;
};

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
    std::vector<LinearTerm> terms;
    Relation relation = Relation::Equal;
    double rhs = 0.0;
    std::string family;
    std::string tag;
};

/// Variable/constraint container. Objective sense is always maximize.
class MilpProblem {
public:
    /// Adds a variable; throws std::logic_error on duplicate keys.
    int add_variable(VarKey key, std::string name, double lower, double upper,
                     Integrality integrality = Integrality::Continuous);

    /// Throws std::logic_error when a term references an undeclared variable.
    void add_constraint(Constraint row);

    void set_objective_coefficient(int var, double coef);

    [[nodiscard]] const std::vector<VariableRef>& variables() const { return variables_; }
    [[nodiscard]] const std::vector<Constraint>& constraints() const { return constraints_; }
    [[nodiscard]] const std::vector<double>& objective() const { return objective_; }
    [[nodiscard]] double objective_offset() const { return objective_offset_; }
    void set_objective_offset(double offset) { objective_offset_ = offset; }

    [[nodiscard]] std::optional<int> find(const VarKey& key) const;
    [[nodiscard]] int index(const VarKey& key) const; // throws std::out_of_range

    void set_bounds(int var, double lower, double upper);
    void set_integrality(int var, Integrality integrality);

    [[nodiscard]] std::size_t binary_count() const;
    [[nodiscard]] std::vector<int> binary_indices() const;

    /// Number of rows per family tag prefix.
    [[nodiscard]] std::map<std::string, std::size_t> census() const;

    /// True once the PPA allocation and green target rows have been added.
    [[nodiscard]] bool scoped() const { return scoped_; }
    void mark_scoped() { scoped_ = true; }

private:
    std::vector<VariableRef> variables_;
    std::vector<Constraint> constraints_;
    std::vector<double> objective_;
    double objective_offset_ = 0.0;
    std::map<VarKey, int> lookup_;
    bool scoped_ = false;
};

/// Variable name for `key`, e.g. `p_EL[site2][t=7]` or `c_CfD[PORTFOLIO][t=0]`.
std::string variable_name(const ScenarioConfig& cfg, const VarKey& key);

/// Every row except the PPA allocation (eq8, eq9) and green target (eq30)
/// families, whose scope depends on the case.
/// Throws InputError for invalid scenarios.
MilpProblem build_base_model(const ScenarioConfig& cfg);

/// Adds eq8/eq9/eq30 at the scopes given by `scoping`. Per-site profiles are
/// taken from `scoping` when the PPA scope is PerSite.
/// Throws InputError when PerSite PPA scope has no per-site profiles, and
/// std::logic_error when `model` already carries those families.
void scope_constraints(const ScenarioConfig& cfg, const CaseConfig& scoping, MilpProblem& model);

/// build_base_model followed by scope_constraints with cfg.case_config.
MilpProblem build_model(const ScenarioConfig& cfg);

/// Closed-form row and variable counts for a scenario and case scoping.
struct ModelCensus {
    std::size_t variables = 0;
    std::size_t continuous = 0;
    std::size_t binaries = 0;
    std::map<std::string, std::size_t> rows; // by family
    [[nodiscard]] std::size_t total_rows() const;
};

ModelCensus expected_census(std::size_t sites, std::size_t hours, const CaseConfig& scoping);

/// Copy of `model` with every binary relaxed to a continuous [0, 1] variable.
MilpProblem lp_relaxation(const MilpProblem& model);

/// Family prefix of a tag ("eq4[site1][t=3]" -> "eq4").
std::string family_of(std::string_view tag);

} // namespace h2pf
