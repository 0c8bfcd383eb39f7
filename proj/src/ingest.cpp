#include "h2pf/ingest.hpp"

#include <map>

#include "h2pf/csv.hpp"
#include "h2pf/scenario_io.hpp"

namespace h2pf {

namespace {

class Table {
public:
    Table(const std::filesystem::path& path, std::string name) : name_(std::move(name)) {
        if (!std::filesystem::exists(path)) throw InputError(name_ + ": file not found");
        data_ = read_csv(path);
    }

    std::size_t column(const std::string& col) const {
        auto idx = data_.column_index(col);
        if (!idx) throw InputError(name_ + "." + col + ": missing column");
        return *idx;
    }
    bool has(const std::string& col) const { return data_.column_index(col).has_value(); }

    double number(std::size_t row, const std::string& col) const {
        return parse_number(data_.rows[row][column(col)], name_ + "." + col + " (row " + std::to_string(row + 1) + ")");
    }
    const std::string& text(std::size_t row, const std::string& col) const { return data_.rows[row][column(col)]; }
    std::size_t size() const { return data_.rows.size(); }

private:
    std::string name_;
    CsvTable data_;
};

std::size_t hour_of(const Table& t, std::size_t row, const std::string& field) {
    const double h = t.number(row, "hour");
    if (h < 0 || h != static_cast<double>(static_cast<std::size_t>(h))) {
        throw InputError(field + ".hour (row " + std::to_string(row + 1) + "): expected a non-negative integer");
    }
    return static_cast<std::size_t>(h);
}

} // namespace

ScenarioConfig ingest_raw(const std::filesystem::path& raw_dir) {
    if (!std::filesystem::is_directory(raw_dir)) throw InputError(raw_dir.string() + ": not a directory");

    // Columns are checked before any value so the first schema problem is the one reported.
    const Table sites(raw_dir / "sites.csv", "sites.csv");
    for (const char* col : {"site_id", "efficiency", "capacity_mw", "flexibility_rate", "wind_capacity_mw",
                            "pv_capacity_mw", "charge_efficiency", "discharge_efficiency", "max_charge_mw",
                            "max_discharge_mw", "energy_min_mwh", "energy_max_mwh"}) {
        sites.column(col);
    }
    const Table series(raw_dir / "timeseries.csv", "timeseries.csv");
    for (const char* col : {"hour", "dam_buy", "dam_sell", "wind_cf", "pv_cf", "physical_ppa_mw", "virtual_ppa_mw"}) {
        series.column(col);
    }
    const Table params(raw_dir / "parameters.csv", "parameters.csv");
    params.column("key");
    params.column("value");

    ScenarioConfig cfg;
    for (std::size_t r = 0; r < sites.size(); ++r) {
        SiteSpec s;
        s.site_id = sites.text(r, "site_id");
        s.electrolyzer = {sites.number(r, "efficiency"), sites.number(r, "capacity_mw"),
                          sites.number(r, "flexibility_rate")};
        s.renewables = {sites.number(r, "wind_capacity_mw"), sites.number(r, "pv_capacity_mw")};
        s.storage.charge_efficiency = sites.number(r, "charge_efficiency");
        s.storage.discharge_efficiency = sites.number(r, "discharge_efficiency");
        s.storage.max_charge_mw = sites.number(r, "max_charge_mw");
        s.storage.max_discharge_mw = sites.number(r, "max_discharge_mw");
        s.storage.energy_min_mwh = sites.number(r, "energy_min_mwh");
        s.storage.energy_max_mwh = sites.number(r, "energy_max_mwh");
        s.grid_limit_mw = sites.has("grid_limit_mw")
                              ? sites.number(r, "grid_limit_mw")
                              : 2.0 * (s.electrolyzer.capacity_mw + s.storage.max_charge_mw);
        cfg.sites.push_back(std::move(s));
    }

    for (std::size_t r = 0; r < series.size(); ++r) {
        if (hour_of(series, r, "timeseries.csv") != r) {
            throw InputError("timeseries.csv.hour (row " + std::to_string(r + 1) + "): hours must run 0, 1, 2, ...");
        }
        cfg.prices.dam_buy.push_back(series.number(r, "dam_buy"));
        cfg.prices.dam_sell.push_back(series.number(r, "dam_sell"));
        cfg.policy.wind_cf.push_back(series.number(r, "wind_cf"));
        cfg.policy.pv_cf.push_back(series.number(r, "pv_cf"));
        cfg.contracts.physical_ppa_profile.push_back(series.number(r, "physical_ppa_mw"));
        cfg.contracts.virtual_ppa_profile.push_back(series.number(r, "virtual_ppa_mw"));
    }
    cfg.grid.step_count = series.size();

    std::map<std::string, double> kv;
    for (std::size_t r = 0; r < params.size(); ++r) {
        const std::string& key = params.text(r, "key");
        kv[key] = parse_number(params.text(r, "value"), "parameters.csv." + key);
    }
    auto need = [&](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw InputError(std::string("parameters.csv.") + key + ": missing key");
        return it->second;
    };
    cfg.grid.step_hours = kv.contains("step_hours") ? kv["step_hours"] : 1.0;
    cfg.contracts.physical_ppa_price = need("physical_ppa_price");
    cfg.contracts.virtual_ppa_strike = need("virtual_ppa_strike");
    cfg.contracts.grid_access_tariff = need("grid_access_tariff");
    cfg.contracts.loss_rate = need("loss_rate");
    cfg.prices.bundled_h2 = need("bundled_h2");
    cfg.prices.unbundled_h2 = need("unbundled_h2");
    cfg.prices.go_sell = need("go_sell");
    cfg.prices.go_buy = need("go_buy");
    cfg.policy.green_share = need("green_share");
    cfg.policy.go_conversion = need("go_conversion");
    cfg.policy.go_buy_cap = need("go_buy_cap");
    cfg.policy.go_sell_cap = need("go_sell_cap");

    const auto split_path = raw_dir / "site_ppa.csv";
    if (std::filesystem::exists(split_path)) {
        const Table split(split_path, "site_ppa.csv");
        for (const char* col : {"hour", "site_id", "physical_mw", "virtual_mw"}) split.column(col);
        std::map<std::string, SitePpaProfiles> profiles;
        for (const SiteSpec& s : cfg.sites) {
            profiles[s.site_id] = {Series(cfg.hours(), 0.0), Series(cfg.hours(), 0.0)};
        }
        for (std::size_t r = 0; r < split.size(); ++r) {
            const std::size_t h = hour_of(split, r, "site_ppa.csv");
            const std::string& id = split.text(r, "site_id");
            auto it = profiles.find(id);
            if (it == profiles.end()) {
                throw InputError("site_ppa.csv.site_id (row " + std::to_string(r + 1) + "): unknown site '" + id + "'");
            }
            if (h >= cfg.hours()) {
                throw InputError("site_ppa.csv.hour (row " + std::to_string(r + 1) + "): beyond the time series");
            }
            it->second.physical[h] = split.number(r, "physical_mw");
            it->second.virtual_[h] = split.number(r, "virtual_mw");
        }
        cfg.case_config.per_site_ppa_profiles = std::move(profiles);
    } else {
        cfg.case_config.per_site_ppa_profiles = proportional_ppa_split(cfg);
    }

    const ValidationReport report = validate_scenario(cfg);
    if (!report.ok()) {
        throw InputError(report.violations.front().field + ": " + report.violations.front().message);
    }
    return cfg;
}

} // namespace h2pf
