#include "h2pf/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "h2pf/csv.hpp"

namespace h2pf {

using nlohmann::json;

namespace {

class Reader {
public:
    explicit Reader(std::filesystem::path base_dir) : base_dir_(std::move(base_dir)) {}

    const json& member(const json& obj, const std::string& key, const std::string& path) const {
        if (!obj.is_object()) throw InputError(path + ": expected an object");
        auto it = obj.find(key);
        if (it == obj.end()) throw InputError(join(path, key) + ": missing field");
        return *it;
    }

    double number(const json& obj, const std::string& key, const std::string& path) const {
        const json& v = member(obj, key, path);
        if (!v.is_number()) throw InputError(join(path, key) + ": expected a number");
        return v.get<double>();
    }

    std::string text(const json& obj, const std::string& key, const std::string& path) const {
        const json& v = member(obj, key, path);
        if (!v.is_string()) throw InputError(join(path, key) + ": expected a string");
        return v.get<std::string>();
    }

    Series series(const json& obj, const std::string& key, const std::string& path) const {
        return series_value(member(obj, key, path), join(path, key));
    }

    Series series_value(const json& v, const std::string& field) const {
        if (v.is_array()) {
            Series out;
            out.reserve(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!v[i].is_number()) {
                    throw InputError(field + "[" + std::to_string(i) + "]: expected a number");
                }
                out.push_back(v[i].get<double>());
            }
            return out;
        }
        if (v.is_object() && v.contains("csv") && v["csv"].is_string()) {
            std::filesystem::path p = v["csv"].get<std::string>();
            if (p.is_relative()) p = base_dir_ / p;
            try {
                return read_series_csv(p);
            } catch (const InputError& e) {
                throw InputError(field + ": " + e.what());
            }
        }
        throw InputError(field + ": expected an array or {\"csv\": path}");
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

private:
    std::filesystem::path base_dir_;
};

json series_json(const Series& s) { return json(s); }

} // namespace

double parse_number(const std::string& text, const std::string& field) {
    std::string_view sv = text;
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
    while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r')) sv.remove_suffix(1);
    if (!sv.empty() && sv.front() == '+') sv.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (sv.empty() || ec != std::errc() || ptr != sv.data() + sv.size()) {
        throw InputError(field + ": '" + text + "' is not a number");
    }
    return value;
}

Series read_series_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const auto hour_col = table.column_index("hour");
    const auto value_col = table.column_index("value");
    if (!hour_col || !value_col) {
        throw InputError(path.string() + ": expected columns 'hour' and 'value'");
    }
    Series out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string where = path.string() + " row " + std::to_string(r + 2);
        const double hour = parse_number(row.at(*hour_col), where + " hour");
        if (hour != static_cast<double>(r)) {
            throw InputError(where + ": hours must run 0..n-1 in order");
        }
        out.push_back(parse_number(row.at(*value_col), where + " value"));
    }
    return out;
}

ScenarioConfig scenario_from_json(const json& doc, const std::filesystem::path& base_dir) {
    Reader rd(base_dir);
    ScenarioConfig cfg;

    const json& grid = rd.member(doc, "grid", "");
    const json& steps = rd.member(grid, "step_count", "grid");
    if (!steps.is_number_integer() || steps.get<long long>() < 0) {
        throw InputError("grid.step_count: expected a non-negative integer");
    }
    cfg.grid.step_count = steps.get<std::size_t>();
    cfg.grid.step_hours = rd.number(grid, "step_hours", "grid");

    const json& sites = rd.member(doc, "sites", "");
    if (!sites.is_array()) throw InputError("sites: expected an array");
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const std::string p = "sites[" + std::to_string(i) + "]";
        const json& s = sites[i];
        SiteSpec site;
        site.site_id = rd.text(s, "site_id", p);
        const json& el = rd.member(s, "electrolyzer", p);
        site.electrolyzer.efficiency = rd.number(el, "efficiency", p + ".electrolyzer");
        site.electrolyzer.capacity_mw = rd.number(el, "capacity_mw", p + ".electrolyzer");
        site.electrolyzer.flexibility_rate = rd.number(el, "flexibility_rate", p + ".electrolyzer");
        const json& re = rd.member(s, "renewables", p);
        site.renewables.wind_capacity_mw = rd.number(re, "wind_capacity_mw", p + ".renewables");
        site.renewables.pv_capacity_mw = rd.number(re, "pv_capacity_mw", p + ".renewables");
        const json& st = rd.member(s, "storage", p);
        const std::string sp = p + ".storage";
        site.storage.charge_efficiency = rd.number(st, "charge_efficiency", sp);
        site.storage.discharge_efficiency = rd.number(st, "discharge_efficiency", sp);
        site.storage.max_charge_mw = rd.number(st, "max_charge_mw", sp);
        site.storage.max_discharge_mw = rd.number(st, "max_discharge_mw", sp);
        site.storage.energy_min_mwh = rd.number(st, "energy_min_mwh", sp);
        site.storage.energy_max_mwh = rd.number(st, "energy_max_mwh", sp);
        site.grid_limit_mw = rd.number(s, "grid_limit_mw", p);
        cfg.sites.push_back(std::move(site));
    }

    const json& c = rd.member(doc, "contracts", "");
    cfg.contracts.physical_ppa_price = rd.number(c, "physical_ppa_price", "contracts");
    cfg.contracts.virtual_ppa_strike = rd.number(c, "virtual_ppa_strike", "contracts");
    cfg.contracts.grid_access_tariff = rd.number(c, "grid_access_tariff", "contracts");
    cfg.contracts.loss_rate = rd.number(c, "loss_rate", "contracts");
    cfg.contracts.physical_ppa_profile = rd.series(c, "physical_ppa_profile", "contracts");
    cfg.contracts.virtual_ppa_profile = rd.series(c, "virtual_ppa_profile", "contracts");

    const json& m = rd.member(doc, "prices", "");
    cfg.prices.dam_buy = rd.series(m, "dam_buy", "prices");
    cfg.prices.dam_sell = rd.series(m, "dam_sell", "prices");
    cfg.prices.bundled_h2 = rd.number(m, "bundled_h2", "prices");
    cfg.prices.unbundled_h2 = rd.number(m, "unbundled_h2", "prices");
    cfg.prices.go_sell = rd.number(m, "go_sell", "prices");
    cfg.prices.go_buy = rd.number(m, "go_buy", "prices");

    const json& pol = rd.member(doc, "policy", "");
    cfg.policy.green_share = rd.number(pol, "green_share", "policy");
    cfg.policy.go_conversion = rd.number(pol, "go_conversion", "policy");
    cfg.policy.go_buy_cap = rd.number(pol, "go_buy_cap", "policy");
    cfg.policy.go_sell_cap = rd.number(pol, "go_sell_cap", "policy");
    cfg.policy.wind_cf = rd.series(pol, "wind_cf", "policy");
    cfg.policy.pv_cf = rd.series(pol, "pv_cf", "policy");

    if (doc.contains("case")) {
        const json& cc = doc["case"];
        if (!cc.is_object()) throw InputError("case: expected an object");
        if (cc.contains("ppa_scope")) cfg.case_config.ppa_scope = scope_from_string(rd.text(cc, "ppa_scope", "case"));
        if (cc.contains("green_target_scope")) {
            cfg.case_config.green_target_scope = scope_from_string(rd.text(cc, "green_target_scope", "case"));
        }
        if (cc.contains("per_site_ppa_profiles") && !cc["per_site_ppa_profiles"].is_null()) {
            const json& split = cc["per_site_ppa_profiles"];
            if (!split.is_object()) throw InputError("case.per_site_ppa_profiles: expected an object");
            std::map<std::string, SitePpaProfiles> profiles;
            for (auto it = split.begin(); it != split.end(); ++it) {
                const std::string p = "case.per_site_ppa_profiles." + it.key();
                SitePpaProfiles prof;
                prof.physical = rd.series(it.value(), "physical", p);
                prof.virtual_ = rd.series(it.value(), "virtual", p);
                profiles.emplace(it.key(), std::move(prof));
            }
            cfg.case_config.per_site_ppa_profiles = std::move(profiles);
        }
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scenario file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": invalid JSON: " + e.what());
    }
    return scenario_from_json(doc, path.parent_path());
}

json scenario_to_json(const ScenarioConfig& cfg) {
    json doc;
    doc["grid"] = {{"step_count", cfg.grid.step_count}, {"step_hours", cfg.grid.step_hours}};
    json sites = json::array();
    for (const SiteSpec& s : cfg.sites) {
        sites.push_back({
            {"site_id", s.site_id},
            {"electrolyzer",
             {{"efficiency", s.electrolyzer.efficiency},
              {"capacity_mw", s.electrolyzer.capacity_mw},
              {"flexibility_rate", s.electrolyzer.flexibility_rate}}},
            {"renewables",
             {{"wind_capacity_mw", s.renewables.wind_capacity_mw}, {"pv_capacity_mw", s.renewables.pv_capacity_mw}}},
            {"storage",
             {{"charge_efficiency", s.storage.charge_efficiency},
              {"discharge_efficiency", s.storage.discharge_efficiency},
              {"max_charge_mw", s.storage.max_charge_mw},
              {"max_discharge_mw", s.storage.max_discharge_mw},
              {"energy_min_mwh", s.storage.energy_min_mwh},
              {"energy_max_mwh", s.storage.energy_max_mwh}}},
            {"grid_limit_mw", s.grid_limit_mw},
        });
    }
    doc["sites"] = std::move(sites);
    const ContractTerms& c = cfg.contracts;
    doc["contracts"] = {
        {"physical_ppa_price", c.physical_ppa_price},
        {"virtual_ppa_strike", c.virtual_ppa_strike},
        {"grid_access_tariff", c.grid_access_tariff},
        {"loss_rate", c.loss_rate},
        {"physical_ppa_profile", series_json(c.physical_ppa_profile)},
        {"virtual_ppa_profile", series_json(c.virtual_ppa_profile)},
    };
    const MarketPrices& m = cfg.prices;
    doc["prices"] = {
        {"dam_buy", series_json(m.dam_buy)},
        {"dam_sell", series_json(m.dam_sell)},
        {"bundled_h2", m.bundled_h2},
        {"unbundled_h2", m.unbundled_h2},
        {"go_sell", m.go_sell},
        {"go_buy", m.go_buy},
    };
    const PolicyConfig& p = cfg.policy;
    doc["policy"] = {
        {"green_share", p.green_share},
        {"go_conversion", p.go_conversion},
        {"go_buy_cap", p.go_buy_cap},
        {"go_sell_cap", p.go_sell_cap},
        {"wind_cf", series_json(p.wind_cf)},
        {"pv_cf", series_json(p.pv_cf)},
    };
    json cc = {
        {"ppa_scope", to_string(cfg.case_config.ppa_scope)},
        {"green_target_scope", to_string(cfg.case_config.green_target_scope)},
    };
    if (cfg.case_config.per_site_ppa_profiles) {
        json split = json::object();
        for (const auto& [id, prof] : *cfg.case_config.per_site_ppa_profiles) {
            split[id] = {{"physical", series_json(prof.physical)}, {"virtual", series_json(prof.virtual_)}};
        }
        cc["per_site_ppa_profiles"] = std::move(split);
    }
    doc["case"] = std::move(cc);
    return doc;
}

void save_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << scenario_to_json(cfg).dump(2) << '\n';
}

} // namespace h2pf
