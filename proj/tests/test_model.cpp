#include <doctest.h>

#include <Highs.h>

#include <set>
#include <sstream>

#include "h2pf/lp_format.hpp"
#include "h2pf/model.hpp"
#include "h2pf/objective.hpp"
#include "support.hpp"

using namespace h2pf;

TEST_SUITE("model") {

TEST_CASE("census of the five-site day matches the closed form") {
    for (int n : {1, 2, 3}) {
        const ScenarioConfig cfg = case_scenario(reference_scenario(), n);
        const MilpProblem m = build_model(cfg);
        const ModelCensus expected = expected_census(5, 24, cfg.case_config);
        CHECK(expected.continuous == 24 * (21 * 5 + 9));
        CHECK(m.variables().size() == expected.variables);
        CHECK(m.binary_count() == expected.binaries);
        CHECK(m.census() == expected.rows);
        CHECK(m.constraints().size() == expected.total_rows());
        CHECK(m.census().at("eq4") == 5 * 24);
    }
}

TEST_CASE("green-target rows follow the case scope") {
    const ScenarioConfig base = reference_scenario();
    CHECK(build_model(case_scenario(base, 1)).census().at("eq30") == 5);
    CHECK(build_model(case_scenario(base, 2)).census().at("eq30") == 5);
    CHECK(build_model(case_scenario(base, 3)).census().at("eq30") == 1);
    CHECK(build_model(case_scenario(base, 1)).census().at("eq8") == 5 * 24);
    CHECK(build_model(case_scenario(base, 2)).census().at("eq8") == 24);
}

TEST_CASE("census closed form holds on random shapes") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const std::size_t E = 1 + seed % 4;
        const std::size_t T = 1 + (seed * 7) % 30;
        const ScenarioConfig base = random_scenario(seed, E, T);
        for (int n : {1, 2, 3}) {
            const ScenarioConfig cfg = case_scenario(base, n);
            CHECK(build_model(cfg).census() == expected_census(E, T, cfg.case_config).rows);
        }
    }
}

TEST_CASE("names are unique, deterministic and rows only reference declared variables") {
    const ScenarioConfig cfg = reference_scenario();
    const MilpProblem a = build_model(cfg);
    const MilpProblem b = build_model(cfg);
    std::set<std::string> names;
    for (std::size_t i = 0; i < a.variables().size(); ++i) {
        CHECK(a.variables()[i].name == b.variables()[i].name);
        names.insert(a.variables()[i].name);
    }
    CHECK(names.size() == a.variables().size());
    std::set<std::string> tags;
    for (const Constraint& c : a.constraints()) {
        tags.insert(c.tag);
        CHECK(family_of(c.tag) == c.family);
        for (const LinearTerm& t : c.terms) {
            CHECK(t.var >= 0);
            CHECK(static_cast<std::size_t>(t.var) < a.variables().size());
        }
    }
    CHECK(tags.size() == a.constraints().size());
    CHECK(variable_name(cfg, {VarKind::p_EL, 1, 7}) == "p_EL[site2][t=7]");
    CHECK(tags.contains("eq4[site2][t=7]"));
    CHECK(tags.contains("eq6[site1][t=0][hi]"));
    CHECK(tags.contains("eq24[site3][DAY]"));
    CHECK(tags.contains("eq30[PORTFOLIO][DAY]"));
}

TEST_CASE("only p_EES and c_CfD may go negative") {
    const MilpProblem m = build_model(reference_scenario());
    for (const VariableRef& v : m.variables()) {
        if (v.key.kind == VarKind::p_EES || v.key.kind == VarKind::c_CfD) {
            CHECK(std::isinf(v.lower));
        } else {
            CHECK(v.lower >= 0.0);
        }
    }
}

TEST_CASE("scoping errors") {
    ScenarioConfig cfg = reference_scenario();
    MilpProblem m = build_base_model(cfg);
    CHECK_FALSE(m.census().contains("eq8"));
    CHECK_FALSE(m.census().contains("eq30"));
    scope_constraints(cfg, with_case(cfg.case_config, 2), m);
    CHECK_THROWS_AS(scope_constraints(cfg, with_case(cfg.case_config, 3), m), std::logic_error);

    MilpProblem fresh = build_base_model(cfg);
    CaseConfig no_split = with_case(cfg.case_config, 1);
    no_split.per_site_ppa_profiles.reset();
    CHECK_THROWS_AS(scope_constraints(cfg, no_split, fresh), InputError);

    cfg.grid.step_count = 0;
    CHECK_THROWS_AS(build_model(cfg), InputError);
    ScenarioConfig broken = reference_scenario();
    broken.sites[0].electrolyzer.efficiency = 0.0;
    CHECK_THROWS_WITH_AS(build_model(broken), doctest::Contains("sites[0].electrolyzer.efficiency"), InputError);
}

TEST_CASE("single-hour LP relaxation equals the hand optimum") {
    // Wind covers the downstream demand and its certificates exactly, so
    // h_BD = 0; the remaining 5 MW come from the grid at 40 EUR/MWh and
    // turn into 100 kg sold at 3 EUR/kg: 300 - 200 = 100.
    const ScenarioConfig cfg = case_scenario(test::single_hour_fixture(), 3);
    const MilpProblem relaxed = lp_relaxation(build_model(cfg));
    CHECK(relaxed.binary_count() == 0);
    const Solution sol = solve(relaxed);
    REQUIRE(sol.status.kind == StatusKind::Optimal);
    CHECK(sol.objective_value == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(sol.value(VarKind::p_EL, 0, 0) == doctest::Approx(10.0));
    CHECK(sol.value(VarKind::h_UBD, 0, 0) == doctest::Approx(100.0));
    CHECK(sol.value(VarKind::h_BD, 0, 0) == doctest::Approx(0.0).epsilon(1e-9));

    const Solution mip = solve(build_model(cfg));
    CHECK(mip.objective_value == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("CfD settlement over a flat virtual profile") {
    ScenarioConfig cfg = reference_scenario();
    cfg.contracts.virtual_ppa_strike = 50.0;
    cfg.contracts.virtual_ppa_profile.assign(24, 10.0);
    cfg.prices.dam_buy.assign(24, 40.0);
    cfg.case_config.per_site_ppa_profiles = proportional_ppa_split(cfg);
    cfg.policy.go_sell_cap = required_go_caps(cfg).sell + 10.0;
    cfg.policy.go_buy_cap = required_go_caps(cfg).buy + 10.0;
    const Solution sol = test::solve_case(cfg, 3);
    REQUIRE(sol.status.kind == StatusKind::Optimal);
    const CostBreakdown b = objective_breakdown(case_scenario(cfg, 3), sol);
    CHECK(b.cfd_settlement == doctest::Approx(2400.0).epsilon(1e-12));
    double cfd = 0.0;
    for (std::size_t t = 0; t < 24; ++t) cfd += sol.portfolio(VarKind::c_CfD, t);
    CHECK(cfd == doctest::Approx(2400.0).epsilon(1e-9));
}

TEST_CASE("objective components sum to the solver objective") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const ScenarioConfig base = random_scenario(seed, 2 + seed % 3, 24);
        for (int n : {1, 3}) {
            const ScenarioConfig cfg = case_scenario(base, n);
            const Solution sol = solve(build_model(cfg));
            REQUIRE(sol.status.kind == StatusKind::Optimal);
            const CostBreakdown b = objective_breakdown(cfg, sol);
            CHECK(test::close_rel(b.profit(), sol.objective_value, 1e-6));
            CHECK(b.net_cost() == doctest::Approx(-sol.objective_value));
        }
    }
}

TEST_CASE("zero prices give zero components") {
    ScenarioConfig cfg = reference_scenario();
    cfg.contracts.physical_ppa_price = 0.0;
    cfg.contracts.virtual_ppa_strike = 0.0;
    cfg.contracts.grid_access_tariff = 0.0;
    cfg.prices.dam_buy.assign(24, 0.0);
    cfg.prices.dam_sell.assign(24, 0.0);
    cfg.prices.bundled_h2 = cfg.prices.unbundled_h2 = cfg.prices.go_buy = cfg.prices.go_sell = 0.0;
    const Solution sol = test::solve_case(cfg, 3);
    REQUIRE(sol.status.kind == StatusKind::Optimal);
    const CostBreakdown b = objective_breakdown(case_scenario(cfg, 3), sol);
    CHECK(b.hydrogen_revenue == 0.0);
    CHECK(b.certificate_net == 0.0);
    CHECK(b.electricity_market_net == 0.0);
    CHECK(b.physical_ppa_cost == 0.0);
    CHECK(b.cfd_settlement == 0.0);
    CHECK_THROWS_AS(objective_breakdown(cfg, Solution{}), std::invalid_argument);
}

TEST_CASE("LP export reads back into HiGHS with the same optimum") {
    test::TempDir dir("lp");
    const ScenarioConfig cfg = case_scenario(random_scenario(11, 2, 6), 2);
    const MilpProblem m = build_model(cfg);
    write_lp(m, dir / "model.lp");

    Highs highs;
    highs.setOptionValue("output_flag", false);
    highs.setOptionValue("mip_rel_gap", 1e-9);
    REQUIRE(highs.readModel((dir / "model.lp").string()) != HighsStatus::kError);
    CHECK(highs.getNumCol() == static_cast<HighsInt>(m.variables().size()));
    CHECK(highs.getNumRow() == static_cast<HighsInt>(m.constraints().size()));
    REQUIRE(highs.run() == HighsStatus::kOk);
    REQUIRE(highs.getModelStatus() == HighsModelStatus::kOptimal);
    const Solution ours = solve(m);
    CHECK(test::close_rel(highs.getInfo().objective_function_value, ours.objective_value, 1e-6));
}

TEST_CASE("LP names stay inside the LP alphabet") {
    CHECK(lp_safe_name("eq4[site-2][t=7]") == "eq4(site~2)(t7)");
    std::ostringstream os;
    write_lp(build_model(test::single_hour_fixture()), os);
    const std::string text = os.str();
    CHECK(text.find("Maximize") != std::string::npos);
    CHECK(text.find("Binaries") != std::string::npos);
    CHECK(text.find('[') == std::string::npos);
}

} // TEST_SUITE
