#include <doctest.h>

#include <random>

#include "h2pf/oracle.hpp"
#include "support.hpp"

using namespace h2pf;

TEST_SUITE("oracle") {

TEST_CASE("single hour without storage matches the MILP") {
    const ScenarioConfig cfg = case_scenario(test::single_hour_fixture(), 3);
    const OracleResult r = oracle_solve(cfg);
    REQUIRE(r.feasible);
    CHECK(r.binary_count == 6);
    CHECK(r.pruned == 4); // both storage switches and both GO switches
    CHECK(r.patterns_tried == 4);
    CHECK(r.objective == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(test::close_rel(r.objective, solve(build_model(cfg)).objective_value, 1e-6));
    CHECK(r.best_pattern.size() == r.binary_count);
    CHECK(audit(cfg, r.best).passed());
}

TEST_CASE("no green supply leaves every pattern infeasible") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ScenarioConfig cfg = without_green_supply(tiny_scenario(seed));
        for (SiteSpec& s : cfg.sites) s.electrolyzer.flexibility_rate = 0.2;
        cfg = case_scenario(cfg, 3);
        const OracleResult r = oracle_solve(cfg);
        CHECK_FALSE(r.feasible);
        CHECK(r.infeasible_patterns == r.patterns_tried);
        CHECK(solve(build_model(cfg)).status.kind == StatusKind::Infeasible);
    }
}

TEST_CASE("instances above the binary budget are refused") {
    const ScenarioConfig cfg = case_scenario(random_scenario(1, 3, 2), 3);
    CHECK(build_model(cfg).binary_count() > kOracleBinaryBudget);
    CHECK_THROWS_AS(oracle_solve(cfg), InputError);
}

TEST_CASE("degenerate binaries are exactly the zero-rate switches") {
    ScenarioConfig cfg = test::single_hour_fixture();
    cfg.sites[0].storage.max_charge_mw = 2.0;
    cfg.sites[0].storage.energy_max_mwh = 4.0;
    cfg.policy.go_buy_cap = 3.0;
    const MilpProblem m = build_model(cfg);
    std::set<VarKind> kinds;
    for (int idx : degenerate_binaries(cfg, m)) kinds.insert(m.variables()[idx].key.kind);
    CHECK(kinds == std::set<VarKind>{VarKind::i_EES_Dis, VarKind::i_GO_Sell});
}

TEST_CASE("oracle agrees with the MILP on random tiny instances") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const ScenarioConfig base = tiny_scenario(seed);
        const ScenarioConfig cfg = case_scenario(base, 1 + seed % 3);
        const OracleResult r = oracle_solve(cfg);
        const Solution s = solve(build_model(cfg));
        CHECK(r.feasible == (s.status.kind == StatusKind::Optimal));
        if (r.feasible) CHECK_MESSAGE(test::close_rel(r.objective, s.objective_value, 1e-6), "seed " << seed);
    }
}

TEST_CASE("no audited point beats the oracle") {
    std::mt19937_64 rng(3);
    int audited = 0;
    for (std::uint64_t seed = 30; seed < 36; ++seed) {
        const ScenarioConfig cfg = case_scenario(tiny_scenario(seed), 3);
        const OracleResult r = oracle_solve(cfg);
        REQUIRE(r.feasible);
        const MilpProblem m = build_model(cfg);
        for (int trial = 0; trial < 40; ++trial) {
            BinaryPattern p;
            for (int idx : m.binary_indices()) p[idx] = static_cast<int>(rng() % 2);
            const Solution s = fix_binaries_and_resolve(m, p);
            if (s.status.kind != StatusKind::Optimal || !audit(cfg, s).passed()) continue;
            ++audited;
            CHECK(s.objective_value <= r.objective + 1e-6 * std::max(1.0, std::abs(r.objective)));
        }
    }
    CHECK(audited > 0);
}

TEST_CASE("oracle optima respect the case ordering") {
    for (std::uint64_t seed = 40; seed < 50; ++seed) {
        const ScenarioConfig base = tiny_scenario(seed);
        const OracleResult c1 = oracle_solve(case_scenario(base, 1));
        const OracleResult c2 = oracle_solve(case_scenario(base, 2));
        const OracleResult c3 = oracle_solve(case_scenario(base, 3));
        REQUIRE(c1.feasible);
        CHECK(c1.objective <= c2.objective + 1e-6 * std::max(1.0, std::abs(c2.objective)));
        CHECK(c2.objective <= c3.objective + 1e-6 * std::max(1.0, std::abs(c3.objective)));
    }
}

} // TEST_SUITE
