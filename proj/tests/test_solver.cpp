#include <doctest.h>

#include "support.hpp"

using namespace h2pf;

namespace {

// Every binary of `m` set to `value`, except those listed in `overrides`.
BinaryPattern uniform_pattern(const MilpProblem& m, int value, const std::map<int, int>& overrides = {}) {
    BinaryPattern p;
    for (int idx : m.binary_indices()) p[idx] = value;
    for (const auto& [idx, v] : overrides) p[idx] = v;
    return p;
}

} // namespace

TEST_SUITE("solver") {

TEST_CASE("empty model is optimal with objective zero") {
    const Solution sol = solve(MilpProblem{});
    CHECK(sol.status.kind == StatusKind::Optimal);
    CHECK(sol.objective_value == 0.0);

    MilpProblem one;
    one.add_variable({VarKind::p_EL, 0, 0}, "x", 0.0, 5.0);
    const Solution s1 = solve(one);
    CHECK(s1.status.kind == StatusKind::Optimal);
    CHECK(s1.objective_value == 0.0);
    CHECK(s1.has_assignment());
}

TEST_CASE("contradictory bounds are infeasible") {
    MilpProblem m;
    const int x = m.add_variable({VarKind::p_EL, 0, 0}, "x", 0.0, 10.0);
    m.add_constraint({{{x, 1.0}}, Relation::GreaterEqual, 1.0, "lo", "lo[x]"});
    m.add_constraint({{{x, 1.0}}, Relation::LessEqual, 0.0, "hi", "hi[x]"});
    const Solution sol = solve(m);
    CHECK(sol.status.kind == StatusKind::Infeasible);
    CHECK_FALSE(sol.has_assignment());
}

TEST_CASE("unbounded models are reported") {
    MilpProblem m;
    const int x = m.add_variable({VarKind::p_EL, 0, 0}, "x", 0.0, std::numeric_limits<double>::infinity());
    m.set_objective_coefficient(x, 1.0);
    CHECK(solve(m).status.kind == StatusKind::Unbounded);
}

TEST_CASE("bad options and undeclared variables are rejected") {
    SolveOptions opts;
    opts.time_limit_s = 0.0;
    CHECK_THROWS_AS(solve(MilpProblem{}, opts), std::invalid_argument);
    MilpProblem m;
    CHECK_THROWS_AS(m.add_constraint({{{3, 1.0}}, Relation::Equal, 0.0, "eq3", "eq3[x]"}), std::logic_error);
    CHECK_THROWS_AS(make_backend("cplex"), InputError);
}

TEST_CASE("closing every switch leaves no way to power the downstream process") {
    // No local power and no PPA: with i_DAM_Buy = 0 nothing can feed the electrolyzer.
    ScenarioConfig cfg = test::single_hour_fixture();
    cfg.sites[0].renewables = {0.0, 0.0};
    cfg.policy.go_buy_cap = 100.0;
    const MilpProblem m = build_model(cfg);
    const Solution zeros = fix_binaries_and_resolve(m, uniform_pattern(m, 0));
    CHECK(zeros.status.kind == StatusKind::Infeasible);

    std::map<int, int> open_buy{{m.index({VarKind::i_DAM_Buy, 0, 0}), 1}, {m.index({VarKind::i_GO_Buy, 0, 0}), 1}};
    CHECK(fix_binaries_and_resolve(m, uniform_pattern(m, 0, open_buy)).status.kind == StatusKind::Optimal);
}

TEST_CASE("simultaneous charge and discharge is infeasible") {
    const ScenarioConfig cfg = case_scenario(random_scenario(5, 2, 3), 3);
    const MilpProblem m = build_model(cfg);
    const Solution best = solve(m);
    REQUIRE(best.status.kind == StatusKind::Optimal);
    BinaryPattern p;
    for (int idx : m.binary_indices()) p[idx] = static_cast<int>(best.value(m.variables()[idx].key));
    p[m.index({VarKind::i_EES_Ch, 0, 1})] = 1;
    p[m.index({VarKind::i_EES_Dis, 0, 1})] = 1;
    CHECK(fix_binaries_and_resolve(m, p).status.kind == StatusKind::Infeasible);
}

TEST_CASE("fixing the optimal pattern reproduces the MILP objective") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ScenarioConfig cfg = case_scenario(random_scenario(seed, 2, 4), 1 + seed % 3);
        const MilpProblem m = build_model(cfg);
        const Solution best = solve(m);
        REQUIRE(best.status.kind == StatusKind::Optimal);
        BinaryPattern p;
        for (int idx : m.binary_indices()) p[idx] = static_cast<int>(best.value(m.variables()[idx].key));
        const Solution fixed = fix_binaries_and_resolve(m, p);
        REQUIRE(fixed.status.kind == StatusKind::Optimal);
        CHECK(test::close_rel(fixed.objective_value, best.objective_value, 1e-9));
    }
}

TEST_CASE("incomplete or non-binary patterns are refused") {
    const MilpProblem m = build_model(test::single_hour_fixture());
    BinaryPattern p = uniform_pattern(m, 0);
    p.erase(p.begin());
    CHECK_THROWS_AS(fix_binaries_and_resolve(m, p), std::invalid_argument);
    p = uniform_pattern(m, 0);
    p.begin()->second = 2;
    CHECK_THROWS_AS(fix_binaries_and_resolve(m, p), std::invalid_argument);
    p = uniform_pattern(m, 0);
    p[0] = 1; // p_EL is continuous
    CHECK_THROWS_AS(fix_binaries_and_resolve(m, p), std::invalid_argument);
}

TEST_CASE("optimal solutions satisfy every row and carry integral binaries") {
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        const ScenarioConfig cfg = case_scenario(random_scenario(seed, 3, 24), 1 + seed % 3);
        const MilpProblem m = build_model(cfg);
        const Solution sol = solve(m);
        REQUIRE(sol.status.kind == StatusKind::Optimal);
        std::vector<double> values;
        for (const VariableRef& v : m.variables()) {
            const double x = sol.value(v.key);
            values.push_back(x);
            if (v.integrality == Integrality::Binary) CHECK((x == 0.0 || x == 1.0));
        }
        CHECK(max_row_violation(m, values) <= 1e-6);
    }
}

TEST_CASE("repeated solves agree") {
    const MilpProblem m = build_model(case_scenario(reference_scenario(), 1));
    const double first = solve(m).objective_value;
    for (int i = 0; i < 3; ++i) CHECK(test::close_rel(solve(m).objective_value, first, 1e-9));
}

TEST_CASE("backend selection from the environment") {
    CHECK(make_backend("highs")->name() == "highs");
    CHECK_FALSE(backend_name_from_env().empty());
}

} // TEST_SUITE
