#include "h2pf/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>

#include "h2pf/model.hpp"

namespace h2pf {

namespace {

using K = VarKind;

class Auditor {
public:
    Auditor(const ScenarioConfig& cfg, const Solution& sol, double tol, AuditReport& report)
        : cfg_(cfg), sol_(sol), tol_(tol), report_(report) {}

    double x(K kind, std::size_t e, std::size_t t) const { return sol_.value(kind, e, t); }
    double pf(K kind, std::size_t t) const { return sol_.portfolio(kind, t); }

    void equal(const std::string& family, const std::string& scope, const std::string& hour, double lhs, double rhs,
               const std::string& suffix = "") {
        add(family, scope, hour, suffix, (lhs - rhs) / std::max(1.0, std::abs(rhs)), false);
    }
    void at_most(const std::string& family, const std::string& scope, const std::string& hour, double lhs,
                 double rhs, const std::string& suffix = "") {
        add(family, scope, hour, suffix, std::max(0.0, lhs - rhs) / std::max(1.0, std::abs(rhs)), true);
    }
    void at_least(const std::string& family, const std::string& scope, const std::string& hour, double lhs,
                  double rhs, const std::string& suffix = "") {
        add(family, scope, hour, suffix, std::max(0.0, rhs - lhs) / std::max(1.0, std::abs(rhs)), true);
    }

    void add(const std::string& family, const std::string& scope, const std::string& hour,
             const std::string& suffix, double residual, bool inequality) {
        AuditEntry entry;
        entry.family = family;
        entry.scope = scope;
        entry.hour = hour;
        entry.tag = family + "[" + scope + "]" + (hour == "DAY" ? "[DAY]" : "[t=" + hour + "]") + suffix;
        entry.residual = residual;
        entry.tolerance = tol_;
        entry.inequality = inequality;
        entry.pass = std::isfinite(residual) && std::abs(residual) <= tol_;
        report_.worst_residual = std::max(report_.worst_residual, std::abs(residual));
        report_.entries.push_back(std::move(entry));
    }

private:
    const ScenarioConfig& cfg_;
    const Solution& sol_;
    double tol_;
    AuditReport& report_;
};

bool check_presence(const ScenarioConfig& cfg, const Solution& sol, AuditReport& report) {
    bool complete = true;
    auto need = [&](VarKey key) {
        if (sol.find(key)) return;
        complete = false;
        AuditEntry entry;
        entry.family = "missing_variable";
        entry.tag = variable_name(cfg, key);
        entry.scope = key.site == kPortfolio ? "PORTFOLIO" : cfg.sites[key.site].site_id;
        entry.hour = std::to_string(key.hour);
        entry.residual = std::numeric_limits<double>::infinity();
        entry.pass = false;
        report.entries.push_back(std::move(entry));
    };
    for (std::size_t e = 0; e < cfg.site_count(); ++e) {
        for (std::size_t k = 0; k < kSiteContinuousKinds + kSiteBinaryKinds; ++k) {
            for (std::size_t t = 0; t < cfg.hours(); ++t) {
                need({static_cast<K>(k), static_cast<int>(e), static_cast<int>(t)});
            }
        }
    }
    for (auto k = static_cast<std::size_t>(K::P_PPPA_pf); k < kVarKindCount; ++k) {
        for (std::size_t t = 0; t < cfg.hours(); ++t) need({static_cast<K>(k), kPortfolio, static_cast<int>(t)});
    }
    return complete;
}

// Nonnegativity, binary integrality and the fixed contract profiles; one entry per (scope, kind).
void check_bounds(const ScenarioConfig& cfg, const Solution& sol, Auditor& au) {
    const std::size_t T = cfg.hours();
    for (std::size_t e = 0; e < cfg.site_count(); ++e) {
        for (std::size_t k = 0; k < kSiteContinuousKinds + kSiteBinaryKinds; ++k) {
            const auto kind = static_cast<K>(k);
            if (kind == K::p_EES) continue; // free
            double worst = 0.0;
            for (std::size_t t = 0; t < T; ++t) {
                const double v = sol.value(kind, e, t);
                if (is_binary_kind(kind)) {
                    worst = std::max(worst, std::min(std::abs(v), std::abs(v - 1.0)));
                } else {
                    worst = std::max(worst, std::max(0.0, -v));
                }
            }
            au.add("bounds", cfg.sites[e].site_id, "DAY", "[" + std::string(kind_name(kind)) + "]", worst, true);
        }
    }
    for (auto k = static_cast<std::size_t>(K::P_PPPA_pf); k < kVarKindCount; ++k) {
        const auto kind = static_cast<K>(k);
        if (kind == K::c_CfD) continue; // free
        double worst = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            const double v = sol.portfolio(kind, t);
            if (kind == K::P_PPPA_pf) {
                const double profile = cfg.contracts.physical_ppa_profile[t];
                worst = std::max(worst, std::abs(v - profile) / std::max(1.0, std::abs(profile)));
            } else if (kind == K::P_VPPA_pf) {
                const double profile = cfg.contracts.virtual_ppa_profile[t];
                worst = std::max(worst, std::abs(v - profile) / std::max(1.0, std::abs(profile)));
            } else {
                worst = std::max(worst, std::max(0.0, -v));
            }
        }
        au.add("bounds", "PORTFOLIO", "DAY", "[" + std::string(kind_name(kind)) + "]", worst, true);
    }
}

} // namespace

bool AuditReport::passed() const {
    for (const auto& e : entries) {
        if (!e.pass) return false;
    }
    return true;
}

std::vector<const AuditEntry*> AuditReport::failures() const {
    std::vector<const AuditEntry*> out;
    for (const auto& e : entries) {
        if (!e.pass) out.push_back(&e);
    }
    return out;
}

std::set<std::string> AuditReport::failed_families() const {
    std::set<std::string> out;
    for (const auto& e : entries) {
        if (!e.pass) out.insert(e.family);
    }
    return out;
}

std::map<std::string, std::size_t> AuditReport::equation_census() const {
    std::map<std::string, std::size_t> out;
    for (const auto& e : entries) {
        if (e.family != "bounds" && e.family != "missing_variable") ++out[e.family];
    }
    return out;
}

std::optional<double> site_green_share(const ScenarioConfig& cfg, const Solution& sol, std::size_t e) {
    const double gamma = cfg.policy.go_conversion;
    const double eta = cfg.sites.at(e).electrolyzer.efficiency;
    double certified = 0.0;
    double produced = 0.0;
    for (std::size_t t = 0; t < cfg.hours(); ++t) {
        certified += (sol.value(K::n_GO_VPPA, e, t) + sol.value(K::n_GO_PPPA, e, t) + sol.value(K::n_GO_Local, e, t) +
                      sol.value(K::n_GO_Buy, e, t) - sol.value(K::n_GO_Sell, e, t)) /
                     gamma;
        produced += (sol.value(K::h_BD, e, t) + sol.value(K::h_UBD, e, t) + sol.value(K::h_DSP, e, t)) / eta;
    }
    if (produced <= 1e-12) return std::nullopt;
    return certified / produced;
}

std::optional<double> green_share(const ScenarioConfig& cfg, const Solution& sol) {
    const double gamma = cfg.policy.go_conversion;
    double certified = 0.0;
    double produced = 0.0;
    for (std::size_t e = 0; e < cfg.site_count(); ++e) {
        const double eta = cfg.sites[e].electrolyzer.efficiency;
        for (std::size_t t = 0; t < cfg.hours(); ++t) {
            certified += (sol.value(K::n_GO_VPPA, e, t) + sol.value(K::n_GO_PPPA, e, t) +
                          sol.value(K::n_GO_Local, e, t) + sol.value(K::n_GO_Buy, e, t) -
                          sol.value(K::n_GO_Sell, e, t)) /
                         gamma;
            produced += (sol.value(K::h_BD, e, t) + sol.value(K::h_UBD, e, t) + sol.value(K::h_DSP, e, t)) / eta;
        }
    }
    if (produced <= 1e-12) return std::nullopt;
    return certified / produced;
}

AuditReport audit(const ScenarioConfig& cfg, const Solution& sol, double tol) {
    AuditReport report;
    if (!check_presence(cfg, sol, report)) {
        report.worst_residual = std::numeric_limits<double>::infinity();
        return report;
    }
    Auditor au(cfg, sol, tol, report);
    const std::size_t E = cfg.site_count();
    const std::size_t T = cfg.hours();
    const double dt = cfg.grid.step_hours;
    const double gamma = cfg.policy.go_conversion;
    const PolicyConfig& pol = cfg.policy;
    const CaseConfig& scoping = cfg.case_config;

    for (std::size_t t = 0; t < T; ++t) {
        const std::string h = std::to_string(t);
        au.equal("eq2", "PORTFOLIO", h, au.pf(K::c_CfD, t),
                 (cfg.contracts.virtual_ppa_strike - cfg.prices.dam_buy[t]) * au.pf(K::P_VPPA_pf, t) * dt);
    }

    for (std::size_t e = 0; e < E; ++e) {
        const SiteSpec& s = cfg.sites[e];
        const std::string& id = s.site_id;
        const double eta = s.electrolyzer.efficiency;
        const StorageSpec& st = s.storage;
        for (std::size_t t = 0; t < T; ++t) {
            const std::string h = std::to_string(t);
            auto x = [&](K k) { return au.x(k, e, t); };

            au.equal("eq3", id, h, x(K::h_EL), eta * x(K::p_EL) * dt);
            au.equal("eq4", id, h, x(K::p_Local) + x(K::p_PPPA) + (x(K::p_DAM_Buy) - x(K::p_DAM_Sell)),
                     x(K::p_EES) + x(K::p_EL));
            au.equal("eq5", id, h, x(K::p_Local),
                     pol.wind_cf[t] * s.renewables.wind_capacity_mw + pol.pv_cf[t] * s.renewables.pv_capacity_mw);
            au.at_least("eq6", id, h, x(K::p_EL), x(K::h_DSP) / (eta * dt), "[lo]");
            au.at_most("eq6", id, h, x(K::p_EL), s.electrolyzer.capacity_mw, "[hi]");
            au.equal("eq7", id, h, x(K::h_DSP),
                     eta * s.electrolyzer.capacity_mw * (1.0 - s.electrolyzer.flexibility_rate) * dt);

            au.at_most("eq12", id, h, x(K::p_DAM_Buy), x(K::i_DAM_Buy) * s.grid_limit_mw);
            au.at_most("eq13", id, h, x(K::p_DAM_Sell), x(K::i_DAM_Sell) * s.grid_limit_mw);
            au.at_most("eq14", id, h, x(K::i_DAM_Buy) + x(K::i_DAM_Sell), 1.0);

            const double previous = t == 0 ? st.boundary_level_mwh() : au.x(K::e_EES, e, t - 1);
            au.equal("eq15", id, h, x(K::e_EES),
                     previous + st.charge_efficiency * x(K::p_Ch) * dt - x(K::p_Dis) / st.discharge_efficiency * dt);
            au.at_most("eq16", id, h, x(K::p_Ch), st.max_charge_mw * x(K::i_EES_Ch));
            au.at_most("eq17", id, h, x(K::p_Dis), st.max_discharge_mw * x(K::i_EES_Dis));
            au.at_most("eq18", id, h, x(K::i_EES_Ch) + x(K::i_EES_Dis), 1.0);
            au.equal("eq19", id, h, x(K::p_EES), x(K::p_Ch) - x(K::p_Dis));
            au.at_least("eq20", id, h, x(K::e_EES), st.energy_min_mwh, "[lo]");
            au.at_most("eq20", id, h, x(K::e_EES), st.energy_max_mwh, "[hi]");

            au.equal("eq21", id, h, x(K::h_EL), x(K::h_BD) + x(K::h_UBD) + x(K::h_DSP));

            au.equal("eq25", id, h, x(K::n_GO_VPPA), gamma * x(K::p_VPPA) * dt);
            au.equal("eq26", id, h, x(K::n_GO_PPPA), gamma * x(K::p_PPPA) * dt);
            au.equal("eq27", id, h, x(K::n_GO_Local), gamma * x(K::p_Local) * dt);
            au.equal("eq28", id, h, x(K::n_GO_BD), gamma * x(K::h_BD) / eta);
            au.equal("eq29", id, h, x(K::n_GO_DSP), gamma * x(K::h_DSP) / eta);

            au.at_most("eq31", id, h, x(K::n_GO_Sell), x(K::i_GO_Sell) * pol.go_sell_cap);
            au.at_most("eq32", id, h, x(K::n_GO_Buy), x(K::i_GO_Buy) * pol.go_buy_cap);
            au.at_most("eq33", id, h, x(K::i_GO_Sell) + x(K::i_GO_Buy), 1.0);
        }

        double acquired = 0.0;
        double disposed = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            acquired += au.x(K::n_GO_VPPA, e, t) + au.x(K::n_GO_PPPA, e, t) + au.x(K::n_GO_Local, e, t) +
                        au.x(K::n_GO_Buy, e, t);
            disposed += au.x(K::n_GO_Sell, e, t) + au.x(K::n_GO_BD, e, t) + au.x(K::n_GO_DSP, e, t);
        }
        au.equal("eq24", id, "DAY", acquired, disposed);

        au.equal("boundary_soc", id, "0", au.x(K::e_EES, e, 0), st.boundary_level_mwh());
        if (T > 1) au.equal("boundary_soc", id, std::to_string(T - 1), au.x(K::e_EES, e, T - 1), st.boundary_level_mwh());
    }

    // PPA allocation at the case scope.
    if (scoping.ppa_scope == Scope::PerSite && scoping.per_site_ppa_profiles) {
        const auto& split = *scoping.per_site_ppa_profiles;
        for (std::size_t e = 0; e < E; ++e) {
            const SitePpaProfiles& prof = split.at(cfg.sites[e].site_id);
            for (std::size_t t = 0; t < T; ++t) {
                au.equal("eq8", cfg.sites[e].site_id, std::to_string(t), au.x(K::p_PPPA, e, t), prof.physical[t]);
            }
        }
        for (std::size_t e = 0; e < E; ++e) {
            const SitePpaProfiles& prof = split.at(cfg.sites[e].site_id);
            for (std::size_t t = 0; t < T; ++t) {
                au.equal("eq9", cfg.sites[e].site_id, std::to_string(t), au.x(K::p_VPPA, e, t), prof.virtual_[t]);
            }
        }
    } else {
        for (std::size_t t = 0; t < T; ++t) {
            double sum = 0.0;
            for (std::size_t e = 0; e < E; ++e) sum += au.x(K::p_PPPA, e, t);
            au.equal("eq8", "PORTFOLIO", std::to_string(t), sum, au.pf(K::P_PPPA_pf, t));
        }
        for (std::size_t t = 0; t < T; ++t) {
            double sum = 0.0;
            for (std::size_t e = 0; e < E; ++e) sum += au.x(K::p_VPPA, e, t);
            au.equal("eq9", "PORTFOLIO", std::to_string(t), sum, au.pf(K::P_VPPA_pf, t));
        }
    }

    auto sum_sites = [&](K kind, std::size_t t) {
        double s = 0.0;
        for (std::size_t e = 0; e < E; ++e) s += au.x(kind, e, t);
        return s;
    };
    for (std::size_t t = 0; t < T; ++t) {
        const std::string h = std::to_string(t);
        au.equal("eq10", "PORTFOLIO", h, au.pf(K::p_DAM_Buy_pf, t), sum_sites(K::p_DAM_Buy, t));
        au.equal("eq11", "PORTFOLIO", h, au.pf(K::p_DAM_Sell_pf, t), sum_sites(K::p_DAM_Sell, t));
        au.equal("eq22", "PORTFOLIO", h, au.pf(K::h_BD_pf, t), sum_sites(K::h_BD, t));
        au.equal("eq23", "PORTFOLIO", h, au.pf(K::h_UBD_pf, t), sum_sites(K::h_UBD, t));
        au.equal("eq34", "PORTFOLIO", h, au.pf(K::n_GO_Sell_pf, t), sum_sites(K::n_GO_Sell, t));
        au.equal("eq35", "PORTFOLIO", h, au.pf(K::n_GO_Buy_pf, t), sum_sites(K::n_GO_Buy, t));
    }

    // Green target: certified MWh against alpha times hydrogen-equivalent MWh.
    auto certified_and_required = [&](std::size_t e) {
        const double eta = cfg.sites[e].electrolyzer.efficiency;
        double certified = 0.0;
        double produced = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            certified += (au.x(K::n_GO_VPPA, e, t) + au.x(K::n_GO_PPPA, e, t) + au.x(K::n_GO_Local, e, t) +
                          au.x(K::n_GO_Buy, e, t) - au.x(K::n_GO_Sell, e, t)) /
                         gamma;
            produced += (au.x(K::h_BD, e, t) + au.x(K::h_UBD, e, t) + au.x(K::h_DSP, e, t)) / eta;
        }
        return std::pair{certified, pol.green_share * produced};
    };
    if (scoping.green_target_scope == Scope::PerSite) {
        for (std::size_t e = 0; e < E; ++e) {
            const auto [certified, required] = certified_and_required(e);
            au.at_least("eq30", cfg.sites[e].site_id, "DAY", certified, required);
        }
    } else {
        double certified = 0.0;
        double required = 0.0;
        for (std::size_t e = 0; e < E; ++e) {
            const auto [c, r] = certified_and_required(e);
            certified += c;
            required += r;
        }
        au.at_least("eq30", "PORTFOLIO", "DAY", certified, required);
    }

    double buys = 0.0;
    double sells = 0.0;
    for (std::size_t e = 0; e < E; ++e) {
        for (std::size_t t = 0; t < T; ++t) {
            buys += au.x(K::n_GO_Buy, e, t);
            sells += au.x(K::n_GO_Sell, e, t);
        }
    }
    au.at_most("eq36", "PORTFOLIO", "DAY", buys, pol.go_buy_cap);
    au.at_most("eq37", "PORTFOLIO", "DAY", sells, pol.go_sell_cap);

    check_bounds(cfg, sol, au);
    report.green_share = green_share(cfg, sol);
    return report;
}

void write_audit_csv(const AuditReport& report, std::ostream& out) {
    out << "tag,scope,hour,residual,pass\n";
    char buf[48];
    for (const AuditEntry& e : report.entries) {
        std::snprintf(buf, sizeof buf, "%.4e", e.residual);
        out << e.tag << ',' << e.scope << ',' << e.hour << ',' << buf << ',' << (e.pass ? "true" : "false") << '\n';
    }
}

std::string audit_verdict(const AuditReport& report) {
    char buf[160];
    const std::size_t failures = report.failures().size();
    std::snprintf(buf, sizeof buf, "AUDIT %s entries=%zu failures=%zu worst=%.3e", failures == 0 ? "PASS" : "FAIL",
                  report.entries.size(), failures, report.worst_residual);
    return buf;
}

} // namespace h2pf
