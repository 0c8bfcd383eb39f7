#include <doctest.h>

#include <algorithm>
#include <random>

#include "h2pf/domain.hpp"
#include "support.hpp"

using namespace h2pf;

namespace {

bool has_field(const ValidationReport& r, const std::string& field) {
    return std::ranges::any_of(r.violations, [&](const Violation& v) { return v.field == field; });
}

} // namespace

TEST_SUITE("domain") {

TEST_CASE("dsp demand from electrolyzer data") {
    SiteSpec s;
    s.electrolyzer = {20.0, 10.0, 1.0};
    CHECK(dsp_demand(s) == doctest::Approx(0.0));
    s.electrolyzer = {20.0, 10.0, 0.0};
    CHECK(dsp_demand(s) == doctest::Approx(200.0));
    s.electrolyzer = {18.5, 12.0, 0.4};
    CHECK(dsp_demand(s) == doctest::Approx(133.2).epsilon(1e-12));
}

TEST_CASE("dsp demand is decreasing in flexibility and linear in capacity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        SiteSpec a;
        a.electrolyzer = {15.0 + 10.0 * u(rng), 1.0 + 20.0 * u(rng), u(rng)};
        SiteSpec b = a;
        b.electrolyzer.flexibility_rate = std::min(1.0, a.electrolyzer.flexibility_rate + 0.1 * u(rng));
        CHECK(dsp_demand(b) <= dsp_demand(a) + 1e-12);
        SiteSpec c = a;
        c.electrolyzer.capacity_mw *= 3.0;
        CHECK(dsp_demand(c) == doctest::Approx(3.0 * dsp_demand(a)));
    }
}

TEST_CASE("reference scenario is valid") {
    const ValidationReport r = validate_scenario(reference_scenario());
    CHECK_MESSAGE(r.ok(), r.to_string());
}

TEST_CASE("short pv series is reported by field") {
    ScenarioConfig cfg = reference_scenario();
    cfg.policy.pv_cf.pop_back();
    const ValidationReport r = validate_scenario(cfg);
    REQUIRE_FALSE(r.ok());
    CHECK(has_field(r, "policy.pv_cf"));
    CHECK(r.to_string().find("length 23") != std::string::npos);
}

TEST_CASE("per-site split that misses the portfolio profile at one hour") {
    ScenarioConfig cfg = reference_scenario();
    cfg.case_config.per_site_ppa_profiles->at("site2").physical[3] += 0.75;
    const ValidationReport r = validate_scenario(cfg);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].field == "case.per_site_ppa_profiles.physical");
    CHECK(r.violations[0].message.find("hour 3") != std::string::npos);
}

TEST_CASE("storage bounds out of order") {
    ScenarioConfig cfg = reference_scenario();
    cfg.sites[1].storage.energy_min_mwh = cfg.sites[1].storage.energy_max_mwh + 1.0;
    const ValidationReport r = validate_scenario(cfg);
    CHECK(has_field(r, "sites[1].storage.energy_min_mwh"));
}

TEST_CASE("per-site PPA scope requires a split") {
    ScenarioConfig cfg = reference_scenario();
    cfg.case_config.per_site_ppa_profiles.reset();
    cfg.case_config.ppa_scope = Scope::PerSite;
    CHECK(has_field(validate_scenario(cfg), "case.per_site_ppa_profiles"));
}

TEST_CASE("validation order is deterministic") {
    ScenarioConfig cfg = reference_scenario();
    cfg.sites[0].electrolyzer.efficiency = -1.0;
    cfg.sites[2].grid_limit_mw = 0.0;
    cfg.prices.dam_sell.resize(5);
    cfg.policy.green_share = 2.0;
    const std::string first = validate_scenario(cfg).to_string();
    for (int i = 0; i < 5; ++i) CHECK(validate_scenario(cfg).to_string() == first);
    CHECK(validate_scenario(cfg).violations.size() == 4);
}

TEST_CASE("local renewable injection follows the capacity factors") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ScenarioConfig cfg = random_scenario(seed, 3, 24);
        for (std::size_t e = 0; e < cfg.site_count(); ++e) {
            const RenewableSpec& r = cfg.sites[e].renewables;
            for (std::size_t t = 0; t < cfg.hours(); ++t) {
                CHECK(local_renewable_mw(cfg, e, t) ==
                      cfg.policy.wind_cf[t] * r.wind_capacity_mw + cfg.policy.pv_cf[t] * r.pv_capacity_mw);
            }
        }
    }
}

TEST_CASE("proportional split reproduces the portfolio profile") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        ScenarioConfig cfg = random_scenario(seed, 1 + seed % 5, 24);
        cfg.case_config.per_site_ppa_profiles = proportional_ppa_split(cfg);
        CHECK(validate_scenario(cfg).ok());
    }
}

TEST_CASE("case numbers map to scopes") {
    CaseConfig base;
    CHECK(with_case(base, 1).case_number() == 1);
    CHECK(with_case(base, 2).case_number() == 2);
    CHECK(with_case(base, 3).case_number() == 3);
    CHECK(with_case(base, 2).ppa_scope == Scope::Portfolio);
    CHECK(with_case(base, 2).green_target_scope == Scope::PerSite);
    CHECK_THROWS_AS(with_case(base, 4), InputError);
    CHECK(scope_from_string("PerSite") == Scope::PerSite);
    CHECK_THROWS_AS(scope_from_string("site"), InputError);
}

} // TEST_SUITE
