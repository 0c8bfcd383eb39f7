#include <doctest.h>

#include <sstream>

#include "h2pf/cli.hpp"
#include "h2pf/csv.hpp"
#include "h2pf/ingest.hpp"
#include "h2pf/scenario_io.hpp"
#include "support.hpp"

using namespace h2pf;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

template <class Args, class Fn>
Run run(Fn fn, const Args& args) {
    std::ostringstream out, err;
    const int code = fn(args, out, err);
    return {code, out.str(), err.str()};
}

Run solve_file(const std::filesystem::path& scenario, int n, const std::filesystem::path& out) {
    SolveArgs a;
    a.scenario = scenario;
    a.case_number = n;
    a.out = out;
    return run(cmd_solve, a);
}

// Raw dataset directory equivalent to `cfg`, without a site split file.
void write_raw(const ScenarioConfig& cfg, const std::filesystem::path& dir, bool drop_dam_buy = false) {
    std::filesystem::create_directories(dir);
    std::ofstream sites(dir / "sites.csv");
    sites.precision(17);
    sites << "site_id,efficiency,capacity_mw,flexibility_rate,wind_capacity_mw,pv_capacity_mw,charge_efficiency,"
             "discharge_efficiency,max_charge_mw,max_discharge_mw,energy_min_mwh,energy_max_mwh,grid_limit_mw\n";
    for (const SiteSpec& s : cfg.sites) {
        sites << s.site_id << ',' << s.electrolyzer.efficiency << ',' << s.electrolyzer.capacity_mw << ','
              << s.electrolyzer.flexibility_rate << ',' << s.renewables.wind_capacity_mw << ','
              << s.renewables.pv_capacity_mw << ',' << s.storage.charge_efficiency << ','
              << s.storage.discharge_efficiency << ',' << s.storage.max_charge_mw << ','
              << s.storage.max_discharge_mw << ',' << s.storage.energy_min_mwh << ',' << s.storage.energy_max_mwh
              << ',' << s.grid_limit_mw << '\n';
    }
    std::ofstream ts(dir / "timeseries.csv");
    ts.precision(17);
    ts << (drop_dam_buy ? "hour,dam_sell" : "hour,dam_buy,dam_sell")
       << ",wind_cf,pv_cf,physical_ppa_mw,virtual_ppa_mw\n";
    for (std::size_t t = 0; t < cfg.hours(); ++t) {
        ts << t;
        if (!drop_dam_buy) ts << ',' << cfg.prices.dam_buy[t];
        ts << ',' << cfg.prices.dam_sell[t] << ',' << cfg.policy.wind_cf[t] << ',' << cfg.policy.pv_cf[t] << ','
           << cfg.contracts.physical_ppa_profile[t] << ',' << cfg.contracts.virtual_ppa_profile[t] << '\n';
    }
    std::ofstream p(dir / "parameters.csv");
    p.precision(17);
    p << "key,value\n"
      << "step_hours," << cfg.grid.step_hours << '\n'
      << "physical_ppa_price," << cfg.contracts.physical_ppa_price << '\n'
      << "virtual_ppa_strike," << cfg.contracts.virtual_ppa_strike << '\n'
      << "grid_access_tariff," << cfg.contracts.grid_access_tariff << '\n'
      << "loss_rate," << cfg.contracts.loss_rate << '\n'
      << "bundled_h2," << cfg.prices.bundled_h2 << '\n'
      << "unbundled_h2," << cfg.prices.unbundled_h2 << '\n'
      << "go_sell," << cfg.prices.go_sell << '\n'
      << "go_buy," << cfg.prices.go_buy << '\n'
      << "green_share," << cfg.policy.green_share << '\n'
      << "go_conversion," << cfg.policy.go_conversion << '\n'
      << "go_buy_cap," << cfg.policy.go_buy_cap << '\n'
      << "go_sell_cap," << cfg.policy.go_sell_cap << '\n';
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("solve writes every artifact and exits 0") {
    test::TempDir dir("cli_solve");
    save_scenario(reference_scenario(), dir / "scenario.json");
    SolveArgs a;
    a.scenario = dir / "scenario.json";
    a.out = dir / "out";
    a.lp_file = dir / "model.lp";
    const Run r = run(cmd_solve, a);
    REQUIRE_MESSAGE(r.code == kExitOk, r.err);
    CHECK(r.out.find("AUDIT PASS") != std::string::npos);
    for (const char* f : {"solution.json", "audit.csv", "summary.csv", "manifest.json", "schedules/portfolio.csv",
                          "schedules/site_site3.csv"}) {
        CHECK_MESSAGE(std::filesystem::exists(dir / "out" / f), f);
    }
    CHECK(std::filesystem::exists(dir / "model.lp"));
    CHECK(test::count_lines(dir / "out" / "summary.csv") == 2);
    const CsvTable summary = read_csv(dir / "out" / "summary.csv");
    CHECK(summary.rows[0][0] == "3");

    AuditArgs au;
    au.scenario = dir / "scenario.json";
    au.solution = dir / "out" / "solution.json";
    au.out = dir / "recheck.csv";
    const Run check = run(cmd_audit, au);
    CHECK_MESSAGE(check.code == kExitOk, check.err);
    CHECK(check.out.rfind("AUDIT PASS", 0) == 0);
    CHECK(test::slurp(dir / "recheck.csv") == test::slurp(dir / "out" / "audit.csv"));
}

TEST_CASE("invalid scenarios exit 4 and name the field") {
    test::TempDir dir("cli_bad");
    ScenarioConfig cfg = reference_scenario();
    cfg.sites[1].storage.energy_min_mwh = cfg.sites[1].storage.energy_max_mwh + 1.0;
    save_scenario(cfg, dir / "scenario.json");
    const Run r = solve_file(dir / "scenario.json", 3, dir / "out");
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("sites[1].storage.energy_min_mwh") != std::string::npos);

    CHECK(solve_file(dir / "missing.json", 3, dir / "out").code == kExitInputError);
    std::ofstream(dir / "garbage.json") << "{ not json";
    CHECK(solve_file(dir / "garbage.json", 3, dir / "out").code == kExitInputError);
    save_scenario(reference_scenario(), dir / "ok.json");
    CHECK(solve_file(dir / "ok.json", 7, dir / "out").code == kExitInputError);
}

TEST_CASE("infeasible scenario exits 2") {
    test::TempDir dir("cli_infeasible");
    save_scenario(without_green_supply(reference_scenario()), dir / "scenario.json");
    const Run r = solve_file(dir / "scenario.json", 3, dir / "out");
    CHECK(r.code == kExitInfeasible);
    CHECK(r.out.find("Infeasible") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "out" / "solution.json"));
    CHECK_FALSE(std::filesystem::exists(dir / "out" / "schedules"));
}

TEST_CASE("compare writes three summary rows and deltas") {
    test::TempDir dir("cli_compare");
    save_scenario(reference_scenario(), dir / "scenario.json");
    CompareArgs a;
    a.scenario = dir / "scenario.json";
    a.out = dir / "out";
    const Run r = run(cmd_compare, a);
    REQUIRE_MESSAGE(r.code == kExitOk, r.err);
    CHECK(test::count_lines(dir / "out" / "summary.csv") == 4);
    CHECK(test::count_lines(dir / "out" / "deltas.csv") == 3);
    for (int n : {1, 2, 3}) {
        const auto sub = dir / "out" / ("case" + std::to_string(n));
        CHECK(std::filesystem::exists(sub / "solution.json"));
        CHECK(std::filesystem::exists(sub / "schedules" / "portfolio.csv"));
    }
}

TEST_CASE("summary output is byte-identical across runs") {
    test::TempDir dir("cli_repeat");
    save_scenario(reference_scenario(), dir / "scenario.json");
    CompareArgs a;
    a.scenario = dir / "scenario.json";
    a.out = dir / "a";
    REQUIRE(run(cmd_compare, a).code == kExitOk);
    a.out = dir / "b";
    REQUIRE(run(cmd_compare, a).code == kExitOk);
    CHECK(test::slurp(dir / "a" / "summary.csv") == test::slurp(dir / "b" / "summary.csv"));
    CHECK(test::slurp(dir / "a" / "deltas.csv") == test::slurp(dir / "b" / "deltas.csv"));
    CHECK(test::slurp(dir / "a" / "case2" / "schedules" / "portfolio.csv") ==
          test::slurp(dir / "b" / "case2" / "schedules" / "portfolio.csv"));
}

TEST_CASE("ingest round trip and Case 1 on the ingested data") {
    test::TempDir dir("cli_ingest");
    const ScenarioConfig original = reference_scenario();
    write_raw(original, dir / "raw");
    IngestArgs in;
    in.raw = dir / "raw";
    in.out = dir / "scenario.json";
    const Run r = run(cmd_ingest, in);
    REQUIRE_MESSAGE(r.code == kExitOk, r.err);

    const ScenarioConfig loaded = load_scenario(dir / "scenario.json");
    CHECK(loaded.site_count() == original.site_count());
    CHECK(loaded.prices.dam_buy == original.prices.dam_buy);
    CHECK(loaded.case_config.per_site_ppa_profiles.has_value());

    const CaseResult c1 = run_case(loaded, 1);
    REQUIRE(c1.optimal());
    REQUIRE(c1.green_share.has_value());
    CHECK(*c1.green_share >= 0.9 - 1e-6);
    CHECK(solve_file(dir / "scenario.json", 1, dir / "out").code == kExitOk);
}

TEST_CASE("ingest failures exit 4 and name the missing piece") {
    test::TempDir dir("cli_ingest_bad");
    write_raw(reference_scenario(), dir / "raw", true);
    IngestArgs in;
    in.raw = dir / "raw";
    in.out = dir / "scenario.json";
    Run r = run(cmd_ingest, in);
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("timeseries.csv.dam_buy") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(dir / "scenario.json"));

    write_raw(reference_scenario(), dir / "raw2");
    std::ofstream(dir / "raw2" / "parameters.csv") << "key,value\nstep_hours,1\n";
    in.raw = dir / "raw2";
    r = run(cmd_ingest, in);
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("parameters.csv.physical_ppa_price") != std::string::npos);

    in.raw = dir / "nowhere";
    CHECK(run(cmd_ingest, in).code == kExitInputError);
}

TEST_CASE("argument parsing") {
    auto call = [](std::vector<std::string> words) {
        std::vector<char*> argv;
        for (std::string& w : words) argv.push_back(w.data());
        return run_cli(static_cast<int>(argv.size()), argv.data());
    };
    CHECK(call({"h2pf"}) == kExitInputError);
    CHECK(call({"h2pf", "solve"}) == kExitInputError);
    CHECK(call({"h2pf", "solve", "--scenario", "x.json", "--case", "nine", "--out", "o"}) == kExitInputError);
    CHECK(call({"h2pf", "--help"}) == kExitOk);
}

} // TEST_SUITE
