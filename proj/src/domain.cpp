#include "h2pf/domain.hpp"

#include <cmath>
#include <sstream>

namespace h2pf {

namespace {

class Checker {
public:
    explicit Checker(std::vector<Violation>& out) : out_(out) {}

    void fail(std::string field, std::string message) {
        out_.push_back({std::move(field), std::move(message)});
    }

    void finite(const std::string& field, double v) {
        if (!std::isfinite(v)) fail(field, "must be finite");
    }

    void at_least(const std::string& field, double v, double lo) {
        if (!std::isfinite(v) || v < lo) {
            std::ostringstream os;
            os << "must be >= " << lo << " (got " << v << ")";
            fail(field, os.str());
        }
    }

    void positive(const std::string& field, double v) {
        if (!std::isfinite(v) || v <= 0.0) {
            std::ostringstream os;
            os << "must be > 0 (got " << v << ")";
            fail(field, os.str());
        }
    }

    void within(const std::string& field, double v, double lo, double hi) {
        if (!std::isfinite(v) || v < lo || v > hi) {
            std::ostringstream os;
            os << "must lie in [" << lo << ", " << hi << "] (got " << v << ")";
            fail(field, os.str());
        }
    }

    // Returns false when the length is wrong so element checks can be skipped.
    bool length(const std::string& field, const Series& s, std::size_t n) {
        if (s.size() != n) {
            std::ostringstream os;
            os << "length " << s.size() << " does not match step_count " << n;
            fail(field, os.str());
            return false;
        }
        return true;
    }

    void series_nonneg(const std::string& field, const Series& s) {
        for (std::size_t t = 0; t < s.size(); ++t) {
            if (!std::isfinite(s[t]) || s[t] < 0.0) {
                std::ostringstream os;
                os << "hour " << t << ": must be a finite value >= 0 (got " << s[t] << ")";
                fail(field, os.str());
            }
        }
    }

    void series_unit(const std::string& field, const Series& s) {
        for (std::size_t t = 0; t < s.size(); ++t) {
            if (!std::isfinite(s[t]) || s[t] < 0.0 || s[t] > 1.0) {
                std::ostringstream os;
                os << "hour " << t << ": must lie in [0, 1] (got " << s[t] << ")";
                fail(field, os.str());
            }
        }
    }

    void series_finite(const std::string& field, const Series& s) {
        for (std::size_t t = 0; t < s.size(); ++t) {
            if (!std::isfinite(s[t])) {
                std::ostringstream os;
                os << "hour " << t << ": must be finite";
                fail(field, os.str());
            }
        }
    }

private:
    std::vector<Violation>& out_;
};

bool valid_identifier(const std::string& id) {
    if (id.empty()) return false;
    for (char c : id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                        c == '_' || c == '-';
        if (!ok) return false;
    }
    return id != "PORTFOLIO";
}

// Hourly per-site sums must reproduce the portfolio profile.
constexpr double kSplitTolerance = 1e-9;

void check_split(Checker& ck, const std::string& field, const Series& portfolio,
                 const std::vector<const Series*>& parts) {
    for (std::size_t t = 0; t < portfolio.size(); ++t) {
        double sum = 0.0;
        for (const Series* p : parts) sum += (*p)[t];
        if (std::abs(sum - portfolio[t]) > kSplitTolerance * std::max(1.0, std::abs(portfolio[t]))) {
            std::ostringstream os;
            os << "hour " << t << ": per-site profiles sum to " << sum << " but the portfolio profile is "
               << portfolio[t];
            ck.fail(field, os.str());
        }
    }
}

} // namespace

int CaseConfig::case_number() const {
    if (ppa_scope == Scope::PerSite && green_target_scope == Scope::PerSite) return 1;
    if (ppa_scope == Scope::Portfolio && green_target_scope == Scope::PerSite) return 2;
    if (ppa_scope == Scope::Portfolio && green_target_scope == Scope::Portfolio) return 3;
    return 0;
}

CaseConfig with_case(CaseConfig base, int case_number) {
    switch (case_number) {
    case 1:
        base.ppa_scope = Scope::PerSite;
        base.green_target_scope = Scope::PerSite;
        break;
    case 2:
        base.ppa_scope = Scope::Portfolio;
        base.green_target_scope = Scope::PerSite;
        break;
    case 3:
        base.ppa_scope = Scope::Portfolio;
        base.green_target_scope = Scope::Portfolio;
        break;
    default:
        throw InputError("case number must be 1, 2 or 3 (got " + std::to_string(case_number) + ")");
    }
    return base;
}

std::optional<std::size_t> ScenarioConfig::site_index(const std::string& id) const {
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (sites[i].site_id == id) return i;
    }
    return std::nullopt;
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.field << ": " << v.message << '\n';
    return os.str();
}

ValidationReport validate_scenario(const ScenarioConfig& cfg) {
    ValidationReport report;
    Checker ck(report.violations);

    const std::size_t T = cfg.grid.step_count;
    if (T < 1) ck.fail("grid.step_count", "must be >= 1");
    ck.positive("grid.step_hours", cfg.grid.step_hours);

    if (cfg.sites.empty()) ck.fail("sites", "at least one site is required");

    for (std::size_t i = 0; i < cfg.sites.size(); ++i) {
        const SiteSpec& s = cfg.sites[i];
        const std::string p = "sites[" + std::to_string(i) + "]";
        if (!valid_identifier(s.site_id)) {
            ck.fail(p + ".site_id", "must be a non-empty identifier of [A-Za-z0-9_-] other than PORTFOLIO");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (cfg.sites[j].site_id == s.site_id) {
                ck.fail(p + ".site_id", "duplicate site id '" + s.site_id + "'");
                break;
            }
        }
        ck.positive(p + ".electrolyzer.efficiency", s.electrolyzer.efficiency);
        ck.at_least(p + ".electrolyzer.capacity_mw", s.electrolyzer.capacity_mw, 0.0);
        ck.within(p + ".electrolyzer.flexibility_rate", s.electrolyzer.flexibility_rate, 0.0, 1.0);
        ck.at_least(p + ".renewables.wind_capacity_mw", s.renewables.wind_capacity_mw, 0.0);
        ck.at_least(p + ".renewables.pv_capacity_mw", s.renewables.pv_capacity_mw, 0.0);

        const StorageSpec& st = s.storage;
        const std::string sp = p + ".storage";
        if (!std::isfinite(st.charge_efficiency) || st.charge_efficiency <= 0.0 || st.charge_efficiency > 1.0) {
            ck.fail(sp + ".charge_efficiency", "must lie in (0, 1]");
        }
        if (!std::isfinite(st.discharge_efficiency) || st.discharge_efficiency <= 0.0 ||
            st.discharge_efficiency > 1.0) {
            ck.fail(sp + ".discharge_efficiency", "must lie in (0, 1]");
        }
        ck.at_least(sp + ".max_charge_mw", st.max_charge_mw, 0.0);
        ck.at_least(sp + ".max_discharge_mw", st.max_discharge_mw, 0.0);
        ck.at_least(sp + ".energy_min_mwh", st.energy_min_mwh, 0.0);
        ck.at_least(sp + ".energy_max_mwh", st.energy_max_mwh, 0.0);
        if (std::isfinite(st.energy_min_mwh) && std::isfinite(st.energy_max_mwh)) {
            if (st.energy_min_mwh > st.energy_max_mwh) {
                ck.fail(sp + ".energy_min_mwh", "must not exceed energy_max_mwh");
            } else if (st.boundary_level_mwh() < st.energy_min_mwh) {
                ck.fail(sp + ".energy_min_mwh", "boundary level 0.5*energy_max_mwh falls below energy_min_mwh");
            }
        }
        if (!std::isfinite(s.grid_limit_mw) || s.grid_limit_mw <= 0.0) {
            ck.fail(p + ".grid_limit_mw", "must be finite and > 0");
        }
    }

    const ContractTerms& c = cfg.contracts;
    ck.finite("contracts.physical_ppa_price", c.physical_ppa_price);
    ck.finite("contracts.virtual_ppa_strike", c.virtual_ppa_strike);
    ck.finite("contracts.grid_access_tariff", c.grid_access_tariff);
    if (!std::isfinite(c.loss_rate) || c.loss_rate < 0.0 || c.loss_rate >= 1.0) {
        ck.fail("contracts.loss_rate", "must lie in [0, 1)");
    }
    const bool pppa_ok = ck.length("contracts.physical_ppa_profile", c.physical_ppa_profile, T);
    if (pppa_ok) ck.series_nonneg("contracts.physical_ppa_profile", c.physical_ppa_profile);
    const bool vppa_ok = ck.length("contracts.virtual_ppa_profile", c.virtual_ppa_profile, T);
    if (vppa_ok) ck.series_nonneg("contracts.virtual_ppa_profile", c.virtual_ppa_profile);

    const MarketPrices& m = cfg.prices;
    if (ck.length("prices.dam_buy", m.dam_buy, T)) ck.series_finite("prices.dam_buy", m.dam_buy);
    if (ck.length("prices.dam_sell", m.dam_sell, T)) ck.series_finite("prices.dam_sell", m.dam_sell);
    ck.finite("prices.bundled_h2", m.bundled_h2);
    ck.finite("prices.unbundled_h2", m.unbundled_h2);
    ck.finite("prices.go_sell", m.go_sell);
    ck.finite("prices.go_buy", m.go_buy);

    const PolicyConfig& pol = cfg.policy;
    ck.within("policy.green_share", pol.green_share, 0.0, 1.0);
    ck.positive("policy.go_conversion", pol.go_conversion);
    ck.at_least("policy.go_buy_cap", pol.go_buy_cap, 0.0);
    ck.at_least("policy.go_sell_cap", pol.go_sell_cap, 0.0);
    if (ck.length("policy.wind_cf", pol.wind_cf, T)) ck.series_unit("policy.wind_cf", pol.wind_cf);
    if (ck.length("policy.pv_cf", pol.pv_cf, T)) ck.series_unit("policy.pv_cf", pol.pv_cf);

    const CaseConfig& cc = cfg.case_config;
    if (cc.per_site_ppa_profiles) {
        const auto& split = *cc.per_site_ppa_profiles;
        for (const auto& [id, prof] : split) {
            const std::string p = "case.per_site_ppa_profiles." + id;
            if (!cfg.site_index(id)) ck.fail(p, "refers to unknown site '" + id + "'");
            if (ck.length(p + ".physical", prof.physical, T)) ck.series_nonneg(p + ".physical", prof.physical);
            if (ck.length(p + ".virtual", prof.virtual_, T)) ck.series_nonneg(p + ".virtual", prof.virtual_);
        }
        bool complete = true;
        for (const SiteSpec& s : cfg.sites) {
            if (!split.contains(s.site_id)) {
                ck.fail("case.per_site_ppa_profiles", "missing profiles for site '" + s.site_id + "'");
                complete = false;
            }
        }
        bool lengths_ok = complete && pppa_ok && vppa_ok;
        for (const auto& [id, prof] : split) {
            lengths_ok = lengths_ok && prof.physical.size() == T && prof.virtual_.size() == T;
        }
        if (lengths_ok) {
            std::vector<const Series*> phys;
            std::vector<const Series*> virt;
            for (const SiteSpec& s : cfg.sites) {
                phys.push_back(&split.at(s.site_id).physical);
                virt.push_back(&split.at(s.site_id).virtual_);
            }
            check_split(ck, "case.per_site_ppa_profiles.physical", c.physical_ppa_profile, phys);
            check_split(ck, "case.per_site_ppa_profiles.virtual", c.virtual_ppa_profile, virt);
        }
    } else if (cc.ppa_scope == Scope::PerSite) {
        ck.fail("case.per_site_ppa_profiles", "required when ppa_scope is PerSite");
    }

    return report;
}

double dsp_demand(const SiteSpec& site) {
    const ElectrolyzerSpec& el = site.electrolyzer;
    return el.efficiency * el.capacity_mw * (1.0 - el.flexibility_rate);
}

double local_renewable_mw(const ScenarioConfig& cfg, std::size_t site, std::size_t t) {
    const RenewableSpec& r = cfg.sites.at(site).renewables;
    return cfg.policy.wind_cf.at(t) * r.wind_capacity_mw + cfg.policy.pv_cf.at(t) * r.pv_capacity_mw;
}

std::map<std::string, SitePpaProfiles> proportional_ppa_split(const ScenarioConfig& cfg) {
    double total = 0.0;
    for (const SiteSpec& s : cfg.sites) total += s.electrolyzer.capacity_mw;
    std::map<std::string, SitePpaProfiles> out;
    const std::size_t n = cfg.sites.size();
    for (std::size_t i = 0; i < n; ++i) {
        const SiteSpec& s = cfg.sites[i];
        const double share = total > 0.0 ? s.electrolyzer.capacity_mw / total : 1.0 / static_cast<double>(n);
        SitePpaProfiles prof;
        for (double v : cfg.contracts.physical_ppa_profile) prof.physical.push_back(v * share);
        for (double v : cfg.contracts.virtual_ppa_profile) prof.virtual_.push_back(v * share);
        out.emplace(s.site_id, std::move(prof));
    }
    // Put the rounding remainder on the last site so hourly sums are exact.
    if (n > 0) {
        SitePpaProfiles& last = out.at(cfg.sites.back().site_id);
        for (std::size_t t = 0; t < cfg.contracts.physical_ppa_profile.size(); ++t) {
            double phys = 0.0;
            double virt = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                phys += out.at(cfg.sites[i].site_id).physical[t];
                virt += out.at(cfg.sites[i].site_id).virtual_[t];
            }
            last.physical[t] = std::max(0.0, cfg.contracts.physical_ppa_profile[t] - phys);
            if (t < cfg.contracts.virtual_ppa_profile.size()) {
                last.virtual_[t] = std::max(0.0, cfg.contracts.virtual_ppa_profile[t] - virt);
            }
        }
    }
    return out;
}

const char* to_string(Scope scope) { return scope == Scope::PerSite ? "PerSite" : "Portfolio"; }

Scope scope_from_string(const std::string& text) {
    if (text == "PerSite") return Scope::PerSite;
    if (text == "Portfolio") return Scope::Portfolio;
    throw InputError("scope must be 'PerSite' or 'Portfolio' (got '" + text + "')");
}

} // namespace h2pf
