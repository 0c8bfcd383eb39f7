#pragma once

// Problem-instance data for day-ahead portfolio scheduling of a
// hydrogen-centric company: sites, contracts, prices and policy.
//
// Unit conventions used throughout the library:
//   power            MW
//   energy           MWh
//   hydrogen         kg (per time step unless stated otherwise)
//   certificates     GO units, issued per MWh
//   money            EUR
//   electrolyzer     efficiency in kg per MWh

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace h2pf {

using Series = std::vector<double>;

/// Raised for malformed or inconsistent input data.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an output file or directory cannot be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TimeGrid {
    std::size_t step_count = 24;
    double step_hours = 1.0;
};

struct ElectrolyzerSpec {
    double efficiency = 0.0;       // kg/MWh
    double capacity_mw = 0.0;
    double flexibility_rate = 0.0; // share of capacity free from the downstream process
};

struct RenewableSpec {
    double wind_capacity_mw = 0.0;
    double pv_capacity_mw = 0.0;
};

struct StorageSpec {
    double charge_efficiency = 1.0;
    double discharge_efficiency = 1.0;
    double max_charge_mw = 0.0;
    double max_discharge_mw = 0.0;
    double energy_min_mwh = 0.0;
    double energy_max_mwh = 0.0;

    /// Energy level pinned at the first and last hour of the day.
    [[nodiscard]] double boundary_level_mwh() const { return 0.5 * energy_max_mwh; }
};

struct SiteSpec {
    std::string site_id;
    ElectrolyzerSpec electrolyzer;
    RenewableSpec renewables;
    StorageSpec storage;
    double grid_limit_mw = 0.0; // bound on hourly market purchases and sales
};

struct ContractTerms {
    double physical_ppa_price = 0.0;  // EUR/MWh
    double virtual_ppa_strike = 0.0;  // EUR/MWh
    double grid_access_tariff = 0.0;  // EUR/MWh
    double loss_rate = 0.0;           // delivery losses charged on physical PPA energy
    Series physical_ppa_profile;      // MW, take-as-produced
    Series virtual_ppa_profile;       // MW, take-as-produced
};

struct MarketPrices {
    Series dam_buy;             // EUR/MWh
    Series dam_sell;            // EUR/MWh
    double bundled_h2 = 0.0;    // EUR/kg
    double unbundled_h2 = 0.0;  // EUR/kg
    double go_sell = 0.0;       // EUR/unit
    double go_buy = 0.0;        // EUR/unit
};

struct PolicyConfig {
    double green_share = 0.0;
    double go_conversion = 1.0; // units/MWh
    double go_buy_cap = 0.0;    // units/day
    double go_sell_cap = 0.0;   // units/day
    Series wind_cf;
    Series pv_cf;
};

enum class Scope { PerSite, Portfolio };

struct SitePpaProfiles {
    Series physical;
    Series virtual_;
};

struct CaseConfig {
    Scope ppa_scope = Scope::Portfolio;
    Scope green_target_scope = Scope::Portfolio;
    std::optional<std::map<std::string, SitePpaProfiles>> per_site_ppa_profiles;

    /// 1, 2 or 3 for the named configurations; 0 for per-site PPA with a portfolio target.
    [[nodiscard]] int case_number() const;
};

/// Returns `base` with the scopes of case 1, 2 or 3; per-site profiles are kept.
CaseConfig with_case(CaseConfig base, int case_number);

struct ScenarioConfig {
    TimeGrid grid;
    std::vector<SiteSpec> sites;
    ContractTerms contracts;
    MarketPrices prices;
    PolicyConfig policy;
    CaseConfig case_config;

    [[nodiscard]] std::size_t hours() const { return grid.step_count; }
    [[nodiscard]] std::size_t site_count() const { return sites.size(); }
    [[nodiscard]] std::optional<std::size_t> site_index(const std::string& id) const;
};

struct Violation {
    std::string field;   // dotted path, e.g. "sites[2].storage.energy_min_mwh"
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }
    [[nodiscard]] std::string to_string() const;
};

/// Checks every instance invariant. Violations are returned in a fixed order.
ValidationReport validate_scenario(const ScenarioConfig& cfg);

/// Hourly hydrogen draw of the downstream process, kg/h.
double dsp_demand(const SiteSpec& site);

/// Local renewable injection at a site for hour `t`, MW.
double local_renewable_mw(const ScenarioConfig& cfg, std::size_t site, std::size_t t);

/// Splits the portfolio PPA profiles across sites in proportion to
/// electrolyzer capacity (equal shares if every capacity is zero).
std::map<std::string, SitePpaProfiles> proportional_ppa_split(const ScenarioConfig& cfg);

const char* to_string(Scope scope);
Scope scope_from_string(const std::string& text);

} // namespace h2pf
