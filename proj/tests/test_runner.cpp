#include <doctest.h>

#include <sstream>

#include "h2pf/csv.hpp"
#include "h2pf/objective.hpp"
#include "support.hpp"

using namespace h2pf;
using K = VarKind;

namespace {

double column_sum(const std::filesystem::path& file, const std::string& column) {
    const CsvTable t = read_csv(file);
    const std::size_t c = *t.column_index(column);
    double sum = 0.0;
    for (const auto& row : t.rows) sum += std::stod(row[c]);
    return sum;
}

} // namespace

TEST_SUITE("runner") {

TEST_CASE("three cases on the reference day") {
    const CaseComparison cmp = run_cases(reference_scenario(), {1, 2, 3});
    REQUIRE(cmp.all_optimal());
    CHECK(cmp.ordering_holds());
    REQUIRE(cmp.deltas.size() == 2);
    CHECK(cmp.deltas[0].from_case == 1);
    CHECK(cmp.deltas[0].to_case == 2);
    CHECK(*cmp.deltas[1].net_cost_pct <= 1e-6);
    for (const auto& [n, r] : cmp.per_case) {
        CHECK(r.audit.passed());
        REQUIRE(r.summary.has_value());
        // The summary total is the negated objective.
        CHECK(std::abs(r.summary->sum_eur() + r.solution.objective_value) <= 0.1);
        CHECK(r.summary->sum_eur() == doctest::Approx(r.net_cost).epsilon(1e-9));
        REQUIRE(r.green_share.has_value());
        CHECK(*r.green_share >= 0.9 - 1e-6);
        CHECK(r.summary->go_buy_units <= reference_scenario().policy.go_buy_cap + 1e-6);
        CHECK(r.summary->go_sell_units <= reference_scenario().policy.go_sell_cap + 1e-6);
    }
    // Take-as-produced contracts: identical quantities and costs everywhere.
    const PortfolioSummary& s1 = *cmp.per_case.at(1).summary;
    for (int n : {2, 3}) {
        const PortfolioSummary& s = *cmp.per_case.at(n).summary;
        CHECK(s.pppa_qty_mwh == doctest::Approx(s1.pppa_qty_mwh).epsilon(1e-9));
        CHECK(s.vppa_qty_mwh == doctest::Approx(s1.vppa_qty_mwh).epsilon(1e-9));
        CHECK(s.pppa_cost_eur == doctest::Approx(s1.pppa_cost_eur).epsilon(1e-9));
        CHECK(s.cfd_eur == doctest::Approx(s1.cfd_eur).epsilon(1e-9));
    }
}

TEST_CASE("sequential and concurrent runs agree") {
    const ScenarioConfig cfg = random_scenario(17, 3, 24);
    RunOptions seq;
    seq.concurrent = false;
    const CaseComparison a = run_cases(cfg, {1, 2, 3}, seq);
    const CaseComparison b = run_cases(cfg, {1, 2, 3});
    std::ostringstream sa, sb;
    write_summary_csv(a, sa);
    write_summary_csv(b, sb);
    for (int n : {1, 2, 3}) {
        CHECK(test::close_rel(a.per_case.at(n).solution.objective_value, b.per_case.at(n).solution.objective_value,
                              1e-9));
    }
}

TEST_CASE("schedule export shape and reconciliation") {
    test::TempDir dir("sched");
    const ScenarioConfig cfg = case_scenario(reference_scenario(), 3);
    const Solution sol = solve(build_model(cfg));
    REQUIRE(sol.status.kind == StatusKind::Optimal);
    const auto files = export_schedules(cfg, sol, dir.path());
    REQUIRE(files.size() == 6);
    for (const auto& f : files) CHECK(test::count_lines(f) == 25);

    const PortfolioSummary summary = portfolio_summary(cfg, sol);
    double bundled = 0.0;
    double buys = 0.0;
    for (const SiteSpec& s : cfg.sites) {
        bundled += column_sum(dir / ("site_" + s.site_id + ".csv"), "h_BD");
        buys += column_sum(dir / ("site_" + s.site_id + ".csv"), "n_GO_Buy");
    }
    // Four-decimal rounding over 24 rows and 5 sites.
    CHECK(std::abs(bundled - summary.bundled_qty_kg) <= 24 * 5 * 5e-5 + 1e-6);
    CHECK(std::abs(buys - summary.go_buy_units) <= 24 * 5 * 5e-5 + 1e-6);
    CHECK(std::abs(column_sum(dir / "portfolio.csv", "h_UBD_pf") - summary.unbundled_qty_kg) <= 24 * 5e-5 + 1e-6);

    // Unrounded reconciliation on the assignment itself.
    double bd = 0.0;
    for (std::size_t e = 0; e < cfg.site_count(); ++e) {
        for (std::size_t t = 0; t < cfg.hours(); ++t) bd += sol.value(K::h_BD, e, t);
    }
    CHECK(std::abs(bd - summary.bundled_qty_kg) <= 1e-6);
}

TEST_CASE("inflexible sites run flat out on the downstream process") {
    const ScenarioConfig cfg = case_scenario(reference_scenario(), 2);
    const Solution sol = solve(build_model(cfg));
    REQUIRE(sol.status.kind == StatusKind::Optimal);
    for (std::size_t e : {0u, 3u}) {
        REQUIRE(cfg.sites[e].electrolyzer.flexibility_rate == 0.0);
        for (std::size_t t = 0; t < cfg.hours(); ++t) {
            CHECK(sol.value(K::h_BD, e, t) == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(sol.value(K::h_UBD, e, t) == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(sol.value(K::p_EL, e, t) == doctest::Approx(cfg.sites[e].electrolyzer.capacity_mw));
        }
    }
}

TEST_CASE("site PPA shares add up to the contracted profile") {
    for (int n : {1, 2, 3}) {
        const ScenarioConfig cfg = case_scenario(reference_scenario(), n);
        const Solution sol = solve(build_model(cfg));
        REQUIRE(sol.status.kind == StatusKind::Optimal);
        for (std::size_t t = 0; t < cfg.hours(); ++t) {
            double phys = 0.0;
            for (std::size_t e = 0; e < cfg.site_count(); ++e) phys += sol.value(K::p_PPPA, e, t);
            CHECK(phys == doctest::Approx(cfg.contracts.physical_ppa_profile[t]).epsilon(1e-9));
        }
    }
}

TEST_CASE("a zero green target erases the difference between cases 2 and 3") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ScenarioConfig cfg = random_scenario(seed, 3, 24);
        cfg.policy.green_share = 0.0;
        const CaseComparison cmp = run_cases(cfg, {2, 3});
        CHECK(test::close_rel(cmp.per_case.at(2).solution.objective_value,
                              cmp.per_case.at(3).solution.objective_value, 1e-6));
    }
}

TEST_CASE("one site: cases 1 and 2 coincide") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const CaseComparison cmp = run_cases(random_scenario(seed, 1, 24), {1, 2});
        CHECK(test::close_rel(cmp.per_case.at(1).solution.objective_value,
                              cmp.per_case.at(2).solution.objective_value, 1e-6));
    }
}

TEST_CASE("storage sits at half capacity at both ends of the day") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const ScenarioConfig cfg = case_scenario(random_scenario(seed, 4, 24), 3);
        const Solution sol = solve(build_model(cfg));
        REQUIRE(sol.status.kind == StatusKind::Optimal);
        for (std::size_t e = 0; e < cfg.site_count(); ++e) {
            const double half = 0.5 * cfg.sites[e].storage.energy_max_mwh;
            CHECK(sol.value(K::e_EES, e, 0) == doctest::Approx(half).epsilon(1e-9));
            CHECK(sol.value(K::e_EES, e, 23) == doctest::Approx(half).epsilon(1e-9));
        }
    }
}

TEST_CASE("infeasible cases are reported, not summarised") {
    ScenarioConfig cfg = without_green_supply(reference_scenario());
    const CaseComparison cmp = run_cases(cfg, {1, 3});
    CHECK_FALSE(cmp.all_optimal());
    CHECK(cmp.per_case.at(3).solution.status.kind == StatusKind::Infeasible);
    std::ostringstream os;
    write_summary_csv(cmp, os);
    CHECK(os.str().find("\n3,NA,NA") != std::string::npos);
    CHECK(cmp.deltas.empty());
}

TEST_CASE("bad case requests") {
    ScenarioConfig cfg = reference_scenario();
    CHECK_THROWS_AS(run_cases(cfg, {4}), InputError);
    cfg.case_config.per_site_ppa_profiles.reset();
    CHECK_THROWS_AS(run_cases(cfg, {1, 3}), InputError);
    CHECK_NOTHROW(run_cases(cfg, {3}));
}

TEST_CASE("summary file layout") {
    const CaseComparison cmp = run_cases(reference_scenario(), {1, 2, 3});
    std::ostringstream os;
    write_summary_csv(cmp, os);
    std::istringstream in(os.str());
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "case,vppa_qty_mwh,cfd_eur,pppa_qty_mwh,pppa_cost_eur,dam_buy_mwh,dam_sell_mwh,dam_net_eur,bundled_qty_kg,"
          "bundled_rev_eur,unbundled_qty_kg,unbundled_rev_eur,go_buy_units,go_sell_units,go_net_eur,green_pct,sum_eur");
    int rows = 0;
    for (std::string line; std::getline(in, line);) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 16);
    }
    CHECK(rows == 3);
    std::ostringstream ds;
    write_deltas_csv(cmp, ds);
    CHECK(ds.str().rfind("from_case,to_case,net_cost_pct", 0) == 0);
}

} // TEST_SUITE
