#include <doctest.h>

#include <fstream>

#include "h2pf/csv.hpp"
#include "h2pf/scenario_io.hpp"
#include "h2pf/solution_io.hpp"
#include "support.hpp"

using namespace h2pf;
using nlohmann::json;

TEST_SUITE("io") {

TEST_CASE("scenario JSON round trip is exact") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const ScenarioConfig cfg = random_scenario(seed, 3, 24);
        const json doc = scenario_to_json(cfg);
        const ScenarioConfig back = scenario_from_json(json::parse(doc.dump()));
        CHECK(scenario_to_json(back) == doc);
        CHECK(back.prices.dam_buy == cfg.prices.dam_buy);
        CHECK(back.case_config.per_site_ppa_profiles->at("s1").physical ==
              cfg.case_config.per_site_ppa_profiles->at("s1").physical);
    }
}

TEST_CASE("series can come from CSV files") {
    test::TempDir dir("io");
    const ScenarioConfig cfg = reference_scenario();
    {
        std::ofstream f(dir / "pv.csv");
        f << "hour,value\n";
        for (std::size_t t = 0; t < cfg.hours(); ++t) f << t << ',' << fixed4(cfg.policy.pv_cf[t] / 2) << '\n';
    }
    json doc = scenario_to_json(cfg);
    doc["policy"]["pv_cf"] = {{"csv", "pv.csv"}};
    {
        std::ofstream f(dir / "scenario.json");
        f << doc.dump();
    }
    const ScenarioConfig loaded = load_scenario(dir / "scenario.json");
    REQUIRE(loaded.policy.pv_cf.size() == cfg.hours());
    CHECK(loaded.policy.pv_cf[12] == doctest::Approx(cfg.policy.pv_cf[12] / 2).epsilon(1e-4));
}

TEST_CASE("missing and mistyped fields are named") {
    json doc = scenario_to_json(reference_scenario());
    doc["prices"].erase("dam_buy");
    CHECK_THROWS_WITH_AS(scenario_from_json(doc), doctest::Contains("prices.dam_buy"), InputError);

    doc = scenario_to_json(reference_scenario());
    doc["sites"][2]["storage"]["max_charge_mw"] = "fast";
    CHECK_THROWS_WITH_AS(scenario_from_json(doc), doctest::Contains("max_charge_mw"), InputError);

    doc = scenario_to_json(reference_scenario());
    doc["policy"]["wind_cf"][4] = nullptr;
    CHECK_THROWS_WITH_AS(scenario_from_json(doc), doctest::Contains("policy.wind_cf[4]"), InputError);
}

TEST_CASE("series CSV needs ordered hours") {
    test::TempDir dir("io");
    {
        std::ofstream f(dir / "s.csv");
        f << "hour,value\n0,1.5\n2,2.5\n";
    }
    CHECK_THROWS_AS(read_series_csv(dir / "s.csv"), InputError);
    {
        std::ofstream f(dir / "s.csv");
        f << "\xEF\xBB\xBFhour,value\r\n0,1.5\r\n1,-2.25e-3\r\n";
    }
    const Series s = read_series_csv(dir / "s.csv");
    REQUIRE(s.size() == 2);
    CHECK(s[1] == -2.25e-3);
}

TEST_CASE("numbers parse without loss") {
    CHECK(parse_number("0.1", "x") == 0.1);
    CHECK(parse_number(" 1e-300", "x") == 1e-300);
    CHECK(parse_number("12345.678901234567", "x") == 12345.678901234567);
    CHECK_THROWS_WITH_AS(parse_number("12a", "prices.go_buy"), doctest::Contains("prices.go_buy"), InputError);
    CHECK_THROWS_AS(parse_number("", "x"), InputError);
}

TEST_CASE("fixed four-decimal output") {
    CHECK(fixed4(1.0) == "1.0000");
    CHECK(fixed4(-0.0) == "0.0000");
    CHECK(fixed4(-0.00001) == "0.0000");
    CHECK(fixed4(2.71828) == "2.7183");
}

TEST_CASE("solution files round trip and reject unknown names") {
    const ScenarioConfig cfg = case_scenario(test::single_hour_fixture(), 3);
    const Solution sol = solve(build_model(cfg));
    REQUIRE(sol.status.kind == StatusKind::Optimal);
    const json doc = solution_to_json(cfg, sol, 3);
    const Solution back = solution_from_json(cfg, json::parse(doc.dump()));
    CHECK(back.assignment == sol.assignment);
    CHECK(back.objective_value == sol.objective_value);

    json bad = doc;
    bad["values"]["p_EL[ghost][t=0]"] = 1.0;
    CHECK_THROWS_AS(solution_from_json(cfg, bad), InputError);
}

} // TEST_SUITE
