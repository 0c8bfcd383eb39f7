#include <doctest.h>

#include <random>
#include <sstream>

#include "support.hpp"

using namespace h2pf;
using K = VarKind;

namespace {

// Feasible point of the single-hour fixture built by hand: 5 MW wind plus
// `grid` MW bought, all of it in the electrolyzer; no certificates traded.
Solution hand_assignment(double grid) {
    Solution sol;
    sol.status.kind = StatusKind::Optimal;
    auto set = [&](K k, double v) { sol.assignment[{k, 0, 0}] = v; };
    auto pf = [&](K k, double v) { sol.assignment[{k, kPortfolio, 0}] = v; };
    for (std::size_t k = 0; k < kSiteContinuousKinds + kSiteBinaryKinds; ++k) set(static_cast<K>(k), 0.0);
    for (auto k = static_cast<std::size_t>(K::P_PPPA_pf); k < kVarKindCount; ++k) pf(static_cast<K>(k), 0.0);
    const double p_el = 5.0 + grid;
    set(K::p_Local, 5.0);
    set(K::p_DAM_Buy, grid);
    set(K::i_DAM_Buy, grid > 0.0 ? 1.0 : 0.0);
    set(K::p_EL, p_el);
    set(K::h_EL, 20.0 * p_el);
    set(K::h_DSP, 100.0);
    set(K::h_UBD, 20.0 * p_el - 100.0);
    set(K::n_GO_Local, 5.0);
    set(K::n_GO_DSP, 5.0);
    pf(K::p_DAM_Buy_pf, grid);
    pf(K::h_UBD_pf, 20.0 * p_el - 100.0);
    return sol;
}

std::set<std::string> families(const AuditReport& r) { return r.failed_families(); }

} // namespace

TEST_SUITE("audit") {

TEST_CASE("hand-built single-hour point passes every equation") {
    const ScenarioConfig cfg = case_scenario(test::single_hour_fixture(), 3);
    const AuditReport r = audit(cfg, hand_assignment(4.0));
    CHECK_MESSAGE(r.passed(), audit_verdict(r));
    CHECK(r.worst_residual <= 1e-12);
    REQUIRE(r.green_share.has_value());
    CHECK(*r.green_share == doctest::Approx(5.0 / 9.0));
}

TEST_CASE("a p_EL perturbation breaks exactly the conversion and balance rows") {
    const ScenarioConfig cfg = case_scenario(test::single_hour_fixture(), 3);
    Solution sol = hand_assignment(4.0);
    sol.assignment[{K::p_EL, 0, 0}] += 0.5;
    const AuditReport r = audit(cfg, sol);
    CHECK(families(r) == std::set<std::string>{"eq3", "eq4"});
    CHECK(r.failures().size() == 2);
}

TEST_CASE("fully certified production has green share one") {
    const ScenarioConfig cfg = case_scenario(test::single_hour_fixture(), 3);
    const Solution sol = hand_assignment(0.0);
    CHECK(audit(cfg, sol).passed());
    REQUIRE(green_share(cfg, sol).has_value());
    CHECK(*green_share(cfg, sol) == doctest::Approx(1.0));
}

TEST_CASE("no hydrogen means no green share") {
    ScenarioConfig cfg = case_scenario(test::single_hour_fixture(), 3);
    Solution sol = hand_assignment(0.0);
    for (K k : {K::h_EL, K::h_BD, K::h_UBD, K::h_DSP}) sol.assignment[{k, 0, 0}] = 0.0;
    CHECK_FALSE(green_share(cfg, sol).has_value());
    CHECK_FALSE(audit(cfg, sol).green_share.has_value());
}

TEST_CASE("a missing variable is named") {
    const ScenarioConfig cfg = case_scenario(test::single_hour_fixture(), 3);
    Solution sol = hand_assignment(4.0);
    sol.assignment.erase({K::n_GO_Sell, 0, 0});
    const AuditReport r = audit(cfg, sol);
    CHECK_FALSE(r.passed());
    REQUIRE(r.failures().size() == 1);
    CHECK(r.failures()[0]->family == "missing_variable");
    CHECK(r.failures()[0]->tag == "n_GO_Sell[solo][t=0]");
}

TEST_CASE("entry census matches the model census") {
    for (int n : {1, 2, 3}) {
        const ScenarioConfig cfg = case_scenario(reference_scenario(), n);
        const MilpProblem m = build_model(cfg);
        const Solution sol = solve(m);
        REQUIRE(sol.status.kind == StatusKind::Optimal);
        const AuditReport r = audit(cfg, sol);
        CHECK(r.equation_census() == m.census());
        std::set<std::string> model_tags;
        for (const Constraint& c : m.constraints()) model_tags.insert(c.tag);
        for (const AuditEntry& e : r.entries) {
            if (e.family != "bounds") CHECK(model_tags.contains(e.tag));
        }
    }
}

TEST_CASE("solver solutions pass and a p_EL perturbation fails eq3 and eq4") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const ScenarioConfig cfg = case_scenario(random_scenario(seed, 3, 24), 1 + seed % 3);
        Solution sol = solve(build_model(cfg));
        REQUIRE(sol.status.kind == StatusKind::Optimal);
        const AuditReport clean = audit(cfg, sol);
        CHECK_MESSAGE(clean.passed(), audit_verdict(clean));

        // Pick a site-hour with room below capacity so eq6 stays satisfied.
        bool found = false;
        for (std::size_t e = 0; e < cfg.site_count() && !found; ++e) {
            for (std::size_t t = 0; t < cfg.hours() && !found; ++t) {
                if (sol.value(K::p_EL, e, t) + 0.5 < cfg.sites[e].electrolyzer.capacity_mw - 1e-3) {
                    sol.assignment[{K::p_EL, static_cast<int>(e), static_cast<int>(t)}] += 0.5;
                    found = true;
                }
            }
        }
        if (!found) continue;
        CHECK(families(audit(cfg, sol)) == std::set<std::string>{"eq3", "eq4"});
    }
}

TEST_CASE("auditor and model rows agree on perturbed points") {
    std::mt19937_64 rng(99);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const ScenarioConfig cfg = case_scenario(random_scenario(seed, 2, 6), 1 + seed % 3);
        const MilpProblem m = build_model(cfg);
        const Solution base = solve(m);
        REQUIRE(base.status.kind == StatusKind::Optimal);
        for (int trial = 0; trial < 150; ++trial) {
            Solution sol = base;
            const VariableRef& v = m.variables()[rng() % m.variables().size()];
            double& x = sol.assignment.at(v.key);
            if (v.integrality == Integrality::Binary) {
                x = 1.0 - x;
            } else {
                const double mag = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
                x += (rng() % 2 ? mag : -mag);
            }
            std::vector<double> values;
            bool bounds_ok = true;
            for (const VariableRef& w : m.variables()) {
                const double val = sol.value(w.key);
                values.push_back(val);
                bounds_ok = bounds_ok && val >= w.lower - 1e-9 && val <= w.upper + 1e-9;
            }
            const bool model_ok = bounds_ok && max_row_violation(m, values) <= 1e-6;
            CHECK_MESSAGE(audit(cfg, sol).passed() == model_ok, v.name);
        }
    }
}

TEST_CASE("audit CSV and verdict line") {
    const ScenarioConfig cfg = case_scenario(test::single_hour_fixture(), 3);
    Solution sol = hand_assignment(4.0);
    const AuditReport ok = audit(cfg, sol);
    std::ostringstream os;
    write_audit_csv(ok, os);
    const std::string csv = os.str();
    CHECK(csv.rfind("tag,scope,hour,residual,pass\n", 0) == 0);
    CHECK(csv.find("eq4[solo][t=0],solo,0,0.0000e+00,true") != std::string::npos);
    CHECK(audit_verdict(ok).rfind("AUDIT PASS", 0) == 0);
    sol.assignment[{K::p_EL, 0, 0}] += 0.5;
    CHECK(audit_verdict(audit(cfg, sol)).rfind("AUDIT FAIL", 0) == 0);
}

} // TEST_SUITE
