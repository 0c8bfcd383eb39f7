#include "h2pf/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace h2pf {

namespace {

double solar_shape(double hour) {
    const double x = std::sin(std::numbers::pi * (hour - 6.0) / 12.0);
    return hour >= 6.0 && hour <= 18.0 ? std::max(0.0, x) : 0.0;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

SiteSpec make_site(std::string id, double eta, double cap, double flex, double wind, double pv, double charge,
                   double energy) {
    SiteSpec s;
    s.site_id = std::move(id);
    s.electrolyzer = {eta, cap, flex};
    s.renewables = {wind, pv};
    s.storage.charge_efficiency = 0.95;
    s.storage.discharge_efficiency = 0.95;
    s.storage.max_charge_mw = charge;
    s.storage.max_discharge_mw = charge;
    s.storage.energy_min_mwh = 0.1 * energy;
    s.storage.energy_max_mwh = energy;
    s.grid_limit_mw = 2.0 * (cap + charge);
    return s;
}

// Sets the caps to the Case-1 requirement plus headroom.
void size_go_caps(ScenarioConfig& cfg, double slack) {
    const GoRequirement need = required_go_caps(cfg);
    cfg.policy.go_buy_cap = std::ceil(need.buy * (1.0 + slack));
    cfg.policy.go_sell_cap = std::ceil(need.sell * (1.0 + slack));
}

} // namespace

GoRequirement required_go_caps(const ScenarioConfig& cfg) {
    const auto split = cfg.case_config.per_site_ppa_profiles ? *cfg.case_config.per_site_ppa_profiles
                                                             : proportional_ppa_split(cfg);
    const double dt = cfg.grid.step_hours;
    const double gamma = cfg.policy.go_conversion;
    GoRequirement need;
    for (std::size_t e = 0; e < cfg.site_count(); ++e) {
        const SiteSpec& s = cfg.sites[e];
        const SitePpaProfiles& prof = split.at(s.site_id);
        double renewable = 0.0; // MWh carrying certificates
        for (std::size_t t = 0; t < cfg.hours(); ++t) {
            renewable += (local_renewable_mw(cfg, e, t) + prof.physical[t] + prof.virtual_[t]) * dt;
        }
        const double hours = static_cast<double>(cfg.hours()) * dt;
        const double dsp = s.electrolyzer.capacity_mw * (1.0 - s.electrolyzer.flexibility_rate) * hours;
        const double flexible = s.electrolyzer.capacity_mw * s.electrolyzer.flexibility_rate * hours;
        need.buy += gamma * std::max(0.0, dsp - renewable);
        need.sell += gamma * std::max(0.0, renewable - dsp - flexible);
    }
    return need;
}

ScenarioConfig reference_scenario() {
    ScenarioConfig cfg;
    cfg.grid = {24, 1.0};
    cfg.sites = {
        make_site("site1", 19.0, 10.0, 0.0, 3.0, 4.0, 2.0, 8.0),
        make_site("site2", 18.5, 12.0, 0.4, 4.0, 6.0, 3.0, 12.0),
        make_site("site3", 19.5, 8.0, 0.6, 2.0, 5.0, 0.0, 0.0),
        make_site("site4", 18.0, 6.0, 0.0, 1.5, 2.0, 1.5, 6.0),
        make_site("site5", 19.0, 9.0, 0.5, 5.0, 3.0, 2.5, 10.0),
    };

    const std::size_t T = cfg.hours();
    for (std::size_t t = 0; t < T; ++t) {
        const double h = static_cast<double>(t);
        const double pv = solar_shape(h + 0.5);
        const double wind = clamp01(0.42 + 0.18 * std::cos(2.0 * std::numbers::pi * (h - 3.0) / 24.0));
        cfg.policy.pv_cf.push_back(pv);
        cfg.policy.wind_cf.push_back(wind);

        const double dam = 78.0 + 22.0 * std::cos(2.0 * std::numbers::pi * (h - 20.0) / 24.0) - 45.0 * pv;
        cfg.prices.dam_buy.push_back(std::round(dam * 100.0) / 100.0);
        cfg.prices.dam_sell.push_back(std::round((dam - 3.0) * 100.0) / 100.0);

        cfg.contracts.physical_ppa_profile.push_back(std::round((9.0 * pv + 3.5 * wind) * 1e4) / 1e4);
        cfg.contracts.virtual_ppa_profile.push_back(std::round((6.0 * wind) * 1e4) / 1e4);
    }
    cfg.contracts.physical_ppa_price = 55.0;
    cfg.contracts.virtual_ppa_strike = 52.0;
    cfg.contracts.grid_access_tariff = 4.5;
    cfg.contracts.loss_rate = 0.03;

    cfg.prices.bundled_h2 = 5.85;
    cfg.prices.unbundled_h2 = 2.0;
    cfg.prices.go_buy = 5.0;
    cfg.prices.go_sell = 4.0;

    cfg.policy.green_share = 0.9;
    cfg.policy.go_conversion = 1.0;

    cfg.case_config.ppa_scope = Scope::Portfolio;
    cfg.case_config.green_target_scope = Scope::Portfolio;
    cfg.case_config.per_site_ppa_profiles = proportional_ppa_split(cfg);
    size_go_caps(cfg, 0.15);
    return cfg;
}

ScenarioConfig random_scenario(std::uint64_t seed, std::size_t sites, std::size_t hours) {
    RandomShape shape;
    shape.sites = sites;
    shape.hours = hours;
    return random_scenario(seed, shape);
}

ScenarioConfig random_scenario(std::uint64_t seed, const RandomShape& shape) {
    std::mt19937_64 rng(seed);
    auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
    auto round2 = [](double v) { return std::round(v * 100.0) / 100.0; };

    ScenarioConfig cfg;
    cfg.grid = {shape.hours, 1.0};
    for (std::size_t e = 0; e < shape.sites; ++e) {
        const double cap = round2(uni(2.0, 12.0));
        const double flex = coin(0.25) ? 0.0 : round2(uni(0.1, 0.9));
        const double charge = coin(shape.storage_probability) ? round2(uni(0.5, 0.4 * cap)) : 0.0;
        const double energy = charge > 0.0 ? round2(charge * uni(2.0, 4.0)) : 0.0;
        cfg.sites.push_back(make_site("s" + std::to_string(e + 1), round2(uni(17.0, 21.0)), cap, flex,
                                      round2(uni(0.0, 0.5 * cap)), round2(uni(0.0, 0.6 * cap)), charge, energy));
    }

    const double pv_phase = uni(-1.5, 1.5);
    const double wind_base = uni(0.2, 0.6);
    const double total_cap = [&] {
        double s = 0.0;
        for (const SiteSpec& site : cfg.sites) s += site.electrolyzer.capacity_mw;
        return s;
    }();
    const double pppa_size = uni(0.1, 0.5) * total_cap;
    const double vppa_size = uni(0.0, 0.3) * total_cap;
    for (std::size_t t = 0; t < shape.hours; ++t) {
        const double h = static_cast<double>(t);
        const double pv = round2(solar_shape(h + 0.5 + pv_phase));
        const double wind = round2(clamp01(wind_base + uni(-0.15, 0.15)));
        cfg.policy.pv_cf.push_back(pv);
        cfg.policy.wind_cf.push_back(wind);
        const double dam = round2(uni(35.0, 110.0) - 30.0 * pv);
        cfg.prices.dam_buy.push_back(dam);
        cfg.prices.dam_sell.push_back(round2(dam - uni(0.0, 6.0)));
        cfg.contracts.physical_ppa_profile.push_back(round2(pppa_size * (0.6 * pv + 0.4 * wind)));
        cfg.contracts.virtual_ppa_profile.push_back(round2(vppa_size * wind));
    }
    cfg.contracts.physical_ppa_price = round2(uni(40.0, 65.0));
    cfg.contracts.virtual_ppa_strike = round2(uni(40.0, 65.0));
    cfg.contracts.grid_access_tariff = round2(uni(2.0, 8.0));
    cfg.contracts.loss_rate = round2(uni(0.0, 0.05));

    cfg.prices.unbundled_h2 = round2(uni(1.5, 3.0));
    cfg.prices.bundled_h2 = round2(cfg.prices.unbundled_h2 + uni(1.0, 4.5));
    cfg.prices.go_buy = round2(uni(2.0, 8.0));
    cfg.prices.go_sell = round2(cfg.prices.go_buy * uni(0.5, 0.95));

    cfg.policy.green_share = coin(0.15) ? 0.0 : round2(uni(0.5, 0.95));
    cfg.policy.go_conversion = 1.0;

    cfg.case_config.ppa_scope = Scope::Portfolio;
    cfg.case_config.green_target_scope = Scope::Portfolio;
    cfg.case_config.per_site_ppa_profiles = proportional_ppa_split(cfg);
    size_go_caps(cfg, shape.go_slack);
    return cfg;
}

ScenarioConfig tiny_scenario(std::uint64_t seed, std::size_t max_free_binaries) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (int attempt = 0;; ++attempt) {
        RandomShape shape;
        shape.sites = 1 + rng() % 2;
        shape.hours = 1 + rng() % 2;
        shape.storage_probability = 0.5;
        shape.go_slack = 0.25;
        ScenarioConfig cfg = random_scenario(rng(), shape);
        // Occasionally open a certificate direction the instance does not
        // need, so both gating paths get exercised.
        if (rng() % 3 == 0) cfg.policy.go_sell_cap = std::max(cfg.policy.go_sell_cap, 1.0);
        if (rng() % 3 == 0) cfg.policy.go_buy_cap = std::max(cfg.policy.go_buy_cap, 1.0);

        const std::size_t cells = shape.sites * shape.hours;
        std::size_t free = 2 * cells;
        for (const SiteSpec& s : cfg.sites) {
            free += (s.storage.max_charge_mw > 0.0 ? shape.hours : 0) + (s.storage.max_discharge_mw > 0.0 ? shape.hours : 0);
        }
        free += (cfg.policy.go_buy_cap > 0.0 ? cells : 0) + (cfg.policy.go_sell_cap > 0.0 ? cells : 0);
        if (free <= max_free_binaries || attempt > 1000) return cfg;
    }
}

ScenarioConfig without_green_supply(ScenarioConfig cfg) {
    for (SiteSpec& s : cfg.sites) s.renewables = {0.0, 0.0};
    std::ranges::fill(cfg.contracts.physical_ppa_profile, 0.0);
    std::ranges::fill(cfg.contracts.virtual_ppa_profile, 0.0);
    if (cfg.case_config.per_site_ppa_profiles) cfg.case_config.per_site_ppa_profiles = proportional_ppa_split(cfg);
    cfg.policy.go_buy_cap = 0.0;
    cfg.policy.go_sell_cap = 0.0;
    cfg.policy.green_share = 1.0;
    return cfg;
}

} // namespace h2pf
