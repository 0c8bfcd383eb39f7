#include "h2pf/model.hpp"

#include <limits>
#include <stdexcept>

namespace h2pf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<std::string_view, kVarKindCount> kKindNames = {
    "p_EL",       "p_Local",    "p_PPPA",     "p_VPPA",      "p_DAM_Buy",   "p_DAM_Sell",    "p_EES",
    "p_Ch",       "p_Dis",      "e_EES",      "h_EL",        "h_BD",        "h_UBD",         "h_DSP",
    "n_GO_VPPA",  "n_GO_PPPA",  "n_GO_Local", "n_GO_Buy",    "n_GO_Sell",   "n_GO_BD",       "n_GO_DSP",
    "i_DAM_Buy",  "i_DAM_Sell", "i_EES_Ch",   "i_EES_Dis",   "i_GO_Sell",   "i_GO_Buy",      "P_PPPA_pf",
    "P_VPPA_pf",  "p_DAM_Buy_pf", "p_DAM_Sell_pf", "h_BD_pf", "h_UBD_pf",   "n_GO_Sell_pf",  "n_GO_Buy_pf",
    "c_CfD",
};

std::string hour_tag(std::size_t t) { return "[t=" + std::to_string(t) + "]"; }

// Row emission helper bound to one scenario and model.
class Emitter {
public:
    Emitter(const ScenarioConfig& cfg, MilpProblem& m) : cfg_(cfg), m_(m) {}

    int v(VarKind kind, std::size_t site, std::size_t t) const {
        return m_.index({kind, static_cast<int>(site), static_cast<int>(t)});
    }
    int pf(VarKind kind, std::size_t t) const { return m_.index({kind, kPortfolio, static_cast<int>(t)}); }

    void row(std::string family, std::string scope_and_time, std::vector<LinearTerm> terms, Relation rel,
             double rhs) {
        Constraint c;
        c.terms = std::move(terms);
        c.relation = rel;
        c.rhs = rhs;
        c.tag = family + scope_and_time;
        c.family = std::move(family);
        m_.add_constraint(std::move(c));
    }

    std::string site_scope(std::size_t e) const { return "[" + cfg_.sites[e].site_id + "]"; }
    std::string site_hour(std::size_t e, std::size_t t) const { return site_scope(e) + hour_tag(t); }
    static std::string portfolio_hour(std::size_t t) { return "[PORTFOLIO]" + hour_tag(t); }

private:
    const ScenarioConfig& cfg_;
    MilpProblem& m_;
};

void declare_variables(const ScenarioConfig& cfg, MilpProblem& m) {
    const std::size_t T = cfg.hours();
    for (std::size_t e = 0; e < cfg.site_count(); ++e) {
        for (std::size_t k = 0; k < kSiteContinuousKinds + kSiteBinaryKinds; ++k) {
            const auto kind = static_cast<VarKind>(k);
            for (std::size_t t = 0; t < T; ++t) {
                const VarKey key{kind, static_cast<int>(e), static_cast<int>(t)};
                if (is_binary_kind(kind)) {
                    m.add_variable(key, variable_name(cfg, key), 0.0, 1.0, Integrality::Binary);
                } else if (kind == VarKind::p_EES) {
                    m.add_variable(key, variable_name(cfg, key), -kInf, kInf);
                } else {
                    m.add_variable(key, variable_name(cfg, key), 0.0, kInf);
                }
            }
        }
    }
    for (auto kind = static_cast<std::size_t>(VarKind::P_PPPA_pf); kind < kVarKindCount; ++kind) {
        for (std::size_t t = 0; t < T; ++t) {
            const VarKey key{static_cast<VarKind>(kind), kPortfolio, static_cast<int>(t)};
            double lo = 0.0;
            double hi = kInf;
            if (key.kind == VarKind::P_PPPA_pf) lo = hi = cfg.contracts.physical_ppa_profile[t];
            if (key.kind == VarKind::P_VPPA_pf) lo = hi = cfg.contracts.virtual_ppa_profile[t];
            if (key.kind == VarKind::c_CfD) lo = -kInf;
            m.add_variable(key, variable_name(cfg, key), lo, hi);
        }
    }
}

void set_objective(const ScenarioConfig& cfg, MilpProblem& m) {
    const double dt = cfg.grid.step_hours;
    const ContractTerms& c = cfg.contracts;
    const MarketPrices& p = cfg.prices;
    const double pppa_unit_cost = (1.0 + c.loss_rate) * c.physical_ppa_price + c.grid_access_tariff;
    for (std::size_t t = 0; t < cfg.hours(); ++t) {
        const int ti = static_cast<int>(t);
        m.set_objective_coefficient(m.index({VarKind::h_BD_pf, kPortfolio, ti}), p.bundled_h2);
        m.set_objective_coefficient(m.index({VarKind::h_UBD_pf, kPortfolio, ti}), p.unbundled_h2);
        m.set_objective_coefficient(m.index({VarKind::n_GO_Sell_pf, kPortfolio, ti}), p.go_sell);
        m.set_objective_coefficient(m.index({VarKind::n_GO_Buy_pf, kPortfolio, ti}), -p.go_buy);
        m.set_objective_coefficient(m.index({VarKind::p_DAM_Sell_pf, kPortfolio, ti}), p.dam_sell[t] * dt);
        m.set_objective_coefficient(m.index({VarKind::p_DAM_Buy_pf, kPortfolio, ti}), -p.dam_buy[t] * dt);
        m.set_objective_coefficient(m.index({VarKind::P_PPPA_pf, kPortfolio, ti}), -pppa_unit_cost * dt);
        m.set_objective_coefficient(m.index({VarKind::c_CfD, kPortfolio, ti}), -1.0);
    }
}

void emit_site_rows(const ScenarioConfig& cfg, MilpProblem& m) {
    Emitter em(cfg, m);
    const std::size_t T = cfg.hours();
    const double dt = cfg.grid.step_hours;
    const double gamma = cfg.policy.go_conversion;
    using K = VarKind;
    using R = Relation;

    for (std::size_t e = 0; e < cfg.site_count(); ++e) {
        const SiteSpec& s = cfg.sites[e];
        const double eta = s.electrolyzer.efficiency;
        const StorageSpec& st = s.storage;
        const double dsp_per_step = dsp_demand(s) * dt;

        for (std::size_t t = 0; t < T; ++t) {
            const std::string at = em.site_hour(e, t);
            auto v = [&](K k) { return em.v(k, e, t); };

            em.row("eq3", at, {{v(K::h_EL), 1.0}, {v(K::p_EL), -eta * dt}}, R::Equal, 0.0);
            em.row("eq4", at,
                   {{v(K::p_Local), 1.0},
                    {v(K::p_PPPA), 1.0},
                    {v(K::p_DAM_Buy), 1.0},
                    {v(K::p_DAM_Sell), -1.0},
                    {v(K::p_EES), -1.0},
                    {v(K::p_EL), -1.0}},
                   R::Equal, 0.0);
            em.row("eq5", at, {{v(K::p_Local), 1.0}}, R::Equal, local_renewable_mw(cfg, e, t));
            em.row("eq6", at + "[lo]", {{v(K::p_EL), 1.0}, {v(K::h_DSP), -1.0 / (eta * dt)}}, R::GreaterEqual,
                   0.0);
            em.row("eq6", at + "[hi]", {{v(K::p_EL), 1.0}}, R::LessEqual, s.electrolyzer.capacity_mw);
            em.row("eq7", at, {{v(K::h_DSP), 1.0}}, R::Equal, dsp_per_step);

            em.row("eq12", at, {{v(K::p_DAM_Buy), 1.0}, {v(K::i_DAM_Buy), -s.grid_limit_mw}}, R::LessEqual, 0.0);
            em.row("eq13", at, {{v(K::p_DAM_Sell), 1.0}, {v(K::i_DAM_Sell), -s.grid_limit_mw}}, R::LessEqual,
                   0.0);
            em.row("eq14", at, {{v(K::i_DAM_Buy), 1.0}, {v(K::i_DAM_Sell), 1.0}}, R::LessEqual, 1.0);

            std::vector<LinearTerm> soc = {{v(K::e_EES), 1.0},
                                           {v(K::p_Ch), -st.charge_efficiency * dt},
                                           {v(K::p_Dis), dt / st.discharge_efficiency}};
            double soc_rhs = st.boundary_level_mwh();
            if (t > 0) {
                soc.push_back({em.v(K::e_EES, e, t - 1), -1.0});
                soc_rhs = 0.0;
            }
            em.row("eq15", at, std::move(soc), R::Equal, soc_rhs);
            em.row("eq16", at, {{v(K::p_Ch), 1.0}, {v(K::i_EES_Ch), -st.max_charge_mw}}, R::LessEqual, 0.0);
            em.row("eq17", at, {{v(K::p_Dis), 1.0}, {v(K::i_EES_Dis), -st.max_discharge_mw}}, R::LessEqual, 0.0);
            em.row("eq18", at, {{v(K::i_EES_Ch), 1.0}, {v(K::i_EES_Dis), 1.0}}, R::LessEqual, 1.0);
            em.row("eq19", at, {{v(K::p_EES), 1.0}, {v(K::p_Ch), -1.0}, {v(K::p_Dis), 1.0}}, R::Equal, 0.0);
            em.row("eq20", at + "[lo]", {{v(K::e_EES), 1.0}}, R::GreaterEqual, st.energy_min_mwh);
            em.row("eq20", at + "[hi]", {{v(K::e_EES), 1.0}}, R::LessEqual, st.energy_max_mwh);

            em.row("eq21", at, {{v(K::h_EL), 1.0}, {v(K::h_BD), -1.0}, {v(K::h_UBD), -1.0}, {v(K::h_DSP), -1.0}},
                   R::Equal, 0.0);

            em.row("eq25", at, {{v(K::n_GO_VPPA), 1.0}, {v(K::p_VPPA), -gamma * dt}}, R::Equal, 0.0);
            em.row("eq26", at, {{v(K::n_GO_PPPA), 1.0}, {v(K::p_PPPA), -gamma * dt}}, R::Equal, 0.0);
            em.row("eq27", at, {{v(K::n_GO_Local), 1.0}, {v(K::p_Local), -gamma * dt}}, R::Equal, 0.0);
            em.row("eq28", at, {{v(K::n_GO_BD), 1.0}, {v(K::h_BD), -gamma / eta}}, R::Equal, 0.0);
            em.row("eq29", at, {{v(K::n_GO_DSP), 1.0}, {v(K::h_DSP), -gamma / eta}}, R::Equal, 0.0);

            em.row("eq31", at, {{v(K::n_GO_Sell), 1.0}, {v(K::i_GO_Sell), -cfg.policy.go_sell_cap}}, R::LessEqual,
                   0.0);
            em.row("eq32", at, {{v(K::n_GO_Buy), 1.0}, {v(K::i_GO_Buy), -cfg.policy.go_buy_cap}}, R::LessEqual,
                   0.0);
            em.row("eq33", at, {{v(K::i_GO_Sell), 1.0}, {v(K::i_GO_Buy), 1.0}}, R::LessEqual, 1.0);
        }

        std::vector<LinearTerm> balance;
        for (std::size_t t = 0; t < T; ++t) {
            for (K k : {K::n_GO_VPPA, K::n_GO_PPPA, K::n_GO_Local, K::n_GO_Buy}) balance.push_back({em.v(k, e, t), 1.0});
            for (K k : {K::n_GO_Sell, K::n_GO_BD, K::n_GO_DSP}) balance.push_back({em.v(k, e, t), -1.0});
        }
        em.row("eq24", em.site_scope(e) + "[DAY]", std::move(balance), R::Equal, 0.0);

        em.row("boundary_soc", em.site_hour(e, 0), {{em.v(K::e_EES, e, 0), 1.0}}, R::Equal,
               st.boundary_level_mwh());
        if (T > 1) {
            em.row("boundary_soc", em.site_hour(e, T - 1), {{em.v(K::e_EES, e, T - 1), 1.0}}, R::Equal,
                   st.boundary_level_mwh());
        }
    }
}

void emit_portfolio_rows(const ScenarioConfig& cfg, MilpProblem& m) {
    Emitter em(cfg, m);
    const std::size_t E = cfg.site_count();
    const double dt = cfg.grid.step_hours;
    using K = VarKind;
    using R = Relation;

    auto aggregate = [&](const char* family, K total, K part, std::size_t t) {
        std::vector<LinearTerm> terms{{em.pf(total, t), 1.0}};
        for (std::size_t e = 0; e < E; ++e) terms.push_back({em.v(part, e, t), -1.0});
        em.row(family, Emitter::portfolio_hour(t), std::move(terms), R::Equal, 0.0);
    };

    for (std::size_t t = 0; t < cfg.hours(); ++t) {
        const double spread = cfg.contracts.virtual_ppa_strike - cfg.prices.dam_buy[t];
        em.row("eq2", Emitter::portfolio_hour(t), {{em.pf(K::c_CfD, t), 1.0}, {em.pf(K::P_VPPA_pf, t), -spread * dt}},
               R::Equal, 0.0);
        aggregate("eq10", K::p_DAM_Buy_pf, K::p_DAM_Buy, t);
        aggregate("eq11", K::p_DAM_Sell_pf, K::p_DAM_Sell, t);
        aggregate("eq22", K::h_BD_pf, K::h_BD, t);
        aggregate("eq23", K::h_UBD_pf, K::h_UBD, t);
        aggregate("eq34", K::n_GO_Sell_pf, K::n_GO_Sell, t);
        aggregate("eq35", K::n_GO_Buy_pf, K::n_GO_Buy, t);
    }

    std::vector<LinearTerm> buys;
    std::vector<LinearTerm> sells;
    for (std::size_t e = 0; e < E; ++e) {
        for (std::size_t t = 0; t < cfg.hours(); ++t) {
            buys.push_back({em.v(K::n_GO_Buy, e, t), 1.0});
            sells.push_back({em.v(K::n_GO_Sell, e, t), 1.0});
        }
    }
    em.row("eq36", "[PORTFOLIO][DAY]", std::move(buys), R::LessEqual, cfg.policy.go_buy_cap);
    em.row("eq37", "[PORTFOLIO][DAY]", std::move(sells), R::LessEqual, cfg.policy.go_sell_cap);
}

void require_valid(const ScenarioConfig& cfg) {
    const ValidationReport report = validate_scenario(cfg);
    if (!report.ok()) {
        const Violation& v = report.violations.front();
        throw InputError("invalid scenario: " + v.field + ": " + v.message);
    }
}

} // namespace

std::string_view kind_name(VarKind kind) { return kKindNames.at(static_cast<std::size_t>(kind)); }

std::optional<VarKind> kind_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) return static_cast<VarKind>(i);
    }
    return std::nullopt;
}

bool is_site_kind(VarKind kind) {
    return static_cast<std::size_t>(kind) < kSiteContinuousKinds + kSiteBinaryKinds;
}

bool is_binary_kind(VarKind kind) {
    const auto k = static_cast<std::size_t>(kind);
    return k >= kSiteContinuousKinds && k < kSiteContinuousKinds + kSiteBinaryKinds;
}

int MilpProblem::add_variable(VarKey key, std::string name, double lower, double upper, Integrality integrality) {
    if (lookup_.contains(key)) throw std::logic_error("duplicate variable " + name);
    const int idx = static_cast<int>(variables_.size());
    variables_.push_back({key, std::move(name), lower, upper, integrality});
    objective_.push_back(0.0);
    lookup_.emplace(key, idx);
    return idx;
}

void MilpProblem::add_constraint(Constraint row) {
    for (const LinearTerm& term : row.terms) {
        if (term.var < 0 || static_cast<std::size_t>(term.var) >= variables_.size()) {
            throw std::logic_error("row " + row.tag + " references undeclared variable " + std::to_string(term.var));
        }
    }
    if (row.family.empty()) row.family = family_of(row.tag);
    constraints_.push_back(std::move(row));
}

void MilpProblem::set_objective_coefficient(int var, double coef) { objective_.at(var) = coef; }

std::optional<int> MilpProblem::find(const VarKey& key) const {
    auto it = lookup_.find(key);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

int MilpProblem::index(const VarKey& key) const {
    auto it = lookup_.find(key);
    if (it == lookup_.end()) {
        throw std::out_of_range("no variable " + std::string(kind_name(key.kind)) + " site " +
                                std::to_string(key.site) + " hour " + std::to_string(key.hour));
    }
    return it->second;
}

void MilpProblem::set_bounds(int var, double lower, double upper) {
    VariableRef& v = variables_.at(var);
    v.lower = lower;
    v.upper = upper;
}

void MilpProblem::set_integrality(int var, Integrality integrality) { variables_.at(var).integrality = integrality; }

std::size_t MilpProblem::binary_count() const {
    std::size_t n = 0;
    for (const auto& v : variables_) n += v.integrality == Integrality::Binary ? 1 : 0;
    return n;
}

std::vector<int> MilpProblem::binary_indices() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].integrality == Integrality::Binary) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::map<std::string, std::size_t> MilpProblem::census() const {
    std::map<std::string, std::size_t> out;
    for (const auto& c : constraints_) ++out[c.family];
    return out;
}

std::string family_of(std::string_view tag) {
    const auto pos = tag.find('[');
    return std::string(pos == std::string_view::npos ? tag : tag.substr(0, pos));
}

std::string variable_name(const ScenarioConfig& cfg, const VarKey& key) {
    std::string scope = key.site == kPortfolio ? "PORTFOLIO" : cfg.sites.at(key.site).site_id;
    return std::string(kind_name(key.kind)) + "[" + scope + "]" + hour_tag(static_cast<std::size_t>(key.hour));
}

MilpProblem build_base_model(const ScenarioConfig& cfg) {
    if (cfg.grid.step_count == 0) throw InputError("grid.step_count: must be >= 1");
    ScenarioConfig check = cfg;
    // Per-site profiles are only required once the PPA scope is applied.
    if (!check.case_config.per_site_ppa_profiles) check.case_config.ppa_scope = Scope::Portfolio;
    require_valid(check);

    MilpProblem m;
    declare_variables(cfg, m);
    set_objective(cfg, m);
    emit_site_rows(cfg, m);
    emit_portfolio_rows(cfg, m);
    return m;
}

void scope_constraints(const ScenarioConfig& cfg, const CaseConfig& scoping, MilpProblem& model) {
    if (model.scoped()) throw std::logic_error("model already carries scoped PPA and green-target rows");
    const std::size_t E = cfg.site_count();
    const std::size_t T = cfg.hours();
    const double gamma = cfg.policy.go_conversion;
    const double alpha = cfg.policy.green_share;
    Emitter em(cfg, model);
    using K = VarKind;
    using R = Relation;

    if (scoping.ppa_scope == Scope::PerSite) {
        if (!scoping.per_site_ppa_profiles) {
            throw InputError("case.per_site_ppa_profiles: required when ppa_scope is PerSite");
        }
        ScenarioConfig check = cfg;
        check.case_config = scoping;
        require_valid(check);
        const auto& split = *scoping.per_site_ppa_profiles;
        for (std::size_t e = 0; e < E; ++e) {
            const SitePpaProfiles& prof = split.at(cfg.sites[e].site_id);
            for (std::size_t t = 0; t < T; ++t) {
                em.row("eq8", em.site_hour(e, t), {{em.v(K::p_PPPA, e, t), 1.0}}, R::Equal, prof.physical[t]);
            }
        }
        for (std::size_t e = 0; e < E; ++e) {
            const SitePpaProfiles& prof = split.at(cfg.sites[e].site_id);
            for (std::size_t t = 0; t < T; ++t) {
                em.row("eq9", em.site_hour(e, t), {{em.v(K::p_VPPA, e, t), 1.0}}, R::Equal, prof.virtual_[t]);
            }
        }
    } else {
        for (std::size_t t = 0; t < T; ++t) {
            std::vector<LinearTerm> terms{{em.pf(K::P_PPPA_pf, t), -1.0}};
            for (std::size_t e = 0; e < E; ++e) terms.push_back({em.v(K::p_PPPA, e, t), 1.0});
            em.row("eq8", Emitter::portfolio_hour(t), std::move(terms), R::Equal, 0.0);
        }
        for (std::size_t t = 0; t < T; ++t) {
            std::vector<LinearTerm> terms{{em.pf(K::P_VPPA_pf, t), -1.0}};
            for (std::size_t e = 0; e < E; ++e) terms.push_back({em.v(K::p_VPPA, e, t), 1.0});
            em.row("eq9", Emitter::portfolio_hour(t), std::move(terms), R::Equal, 0.0);
        }
    }

    // Certified electricity minus the green share of hydrogen production, both in MWh.
    auto green_terms = [&](std::size_t e, std::vector<LinearTerm>& terms) {
        const double eta = cfg.sites[e].electrolyzer.efficiency;
        for (std::size_t t = 0; t < T; ++t) {
            for (K k : {K::n_GO_VPPA, K::n_GO_PPPA, K::n_GO_Local, K::n_GO_Buy}) {
                terms.push_back({em.v(k, e, t), 1.0 / gamma});
            }
            terms.push_back({em.v(K::n_GO_Sell, e, t), -1.0 / gamma});
            for (K k : {K::h_BD, K::h_UBD, K::h_DSP}) terms.push_back({em.v(k, e, t), -alpha / eta});
        }
    };
    if (scoping.green_target_scope == Scope::PerSite) {
        for (std::size_t e = 0; e < E; ++e) {
            std::vector<LinearTerm> terms;
            green_terms(e, terms);
            em.row("eq30", em.site_scope(e) + "[DAY]", std::move(terms), R::GreaterEqual, 0.0);
        }
    } else {
        std::vector<LinearTerm> terms;
        for (std::size_t e = 0; e < E; ++e) green_terms(e, terms);
        em.row("eq30", "[PORTFOLIO][DAY]", std::move(terms), R::GreaterEqual, 0.0);
    }
    model.mark_scoped();
}

MilpProblem build_model(const ScenarioConfig& cfg) {
    MilpProblem m = build_base_model(cfg);
    scope_constraints(cfg, cfg.case_config, m);
    return m;
}

std::size_t ModelCensus::total_rows() const {
    std::size_t n = 0;
    for (const auto& [family, count] : rows) n += count;
    return n;
}

ModelCensus expected_census(std::size_t sites, std::size_t hours, const CaseConfig& scoping) {
    const std::size_t E = sites;
    const std::size_t T = hours;
    const std::size_t ET = E * T;
    ModelCensus c;
    c.continuous = T * (kSiteContinuousKinds * E + kPortfolioKinds);
    c.binaries = kSiteBinaryKinds * ET;
    c.variables = c.continuous + c.binaries;

    for (const char* f : {"eq3", "eq4", "eq5", "eq7", "eq12", "eq13", "eq14", "eq15", "eq16", "eq17", "eq18", "eq19",
                          "eq21", "eq25", "eq26", "eq27", "eq28", "eq29", "eq31", "eq32", "eq33"}) {
        c.rows[f] = ET;
    }
    c.rows["eq6"] = 2 * ET;
    c.rows["eq20"] = 2 * ET;
    for (const char* f : {"eq2", "eq10", "eq11", "eq22", "eq23", "eq34", "eq35"}) c.rows[f] = T;
    const std::size_t ppa_rows = scoping.ppa_scope == Scope::PerSite ? ET : T;
    c.rows["eq8"] = ppa_rows;
    c.rows["eq9"] = ppa_rows;
    c.rows["eq24"] = E;
    c.rows["eq30"] = scoping.green_target_scope == Scope::PerSite ? E : 1;
    c.rows["eq36"] = 1;
    c.rows["eq37"] = 1;
    c.rows["boundary_soc"] = T > 1 ? 2 * E : E;
    return c;
}

MilpProblem lp_relaxation(const MilpProblem& model) {
    MilpProblem relaxed = model;
    for (int idx : model.binary_indices()) relaxed.set_integrality(idx, Integrality::Continuous);
    return relaxed;
}

} // namespace h2pf
