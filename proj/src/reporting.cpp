#include "h2pf/reporting.hpp"

#include <fstream>

#include "h2pf/audit.hpp"
#include "h2pf/csv.hpp"

namespace h2pf {

namespace {

using K = VarKind;

const std::vector<K>& site_kinds() {
    static const std::vector<K> kinds = {K::p_Local,   K::p_PPPA,    K::p_VPPA,     K::p_DAM_Buy, K::p_DAM_Sell,
                                         K::p_Ch,      K::p_Dis,     K::e_EES,      K::p_EL,      K::h_EL,
                                         K::h_BD,      K::h_UBD,     K::h_DSP,      K::n_GO_VPPA, K::n_GO_PPPA,
                                         K::n_GO_Local, K::n_GO_Buy, K::n_GO_Sell,  K::n_GO_BD,   K::n_GO_DSP};
    return kinds;
}

const std::vector<K>& portfolio_kinds() {
    static const std::vector<K> kinds = {K::P_PPPA_pf, K::P_VPPA_pf,    K::p_DAM_Buy_pf, K::p_DAM_Sell_pf, K::h_BD_pf,
                                         K::h_UBD_pf,  K::n_GO_Sell_pf, K::n_GO_Buy_pf,  K::c_CfD};
    return kinds;
}

std::vector<std::string> with_hour(const std::vector<K>& kinds) {
    std::vector<std::string> cols{"hour"};
    for (K k : kinds) cols.emplace_back(kind_name(k));
    return cols;
}

void write_header(const std::vector<std::string>& cols, std::ostream& out) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
}

} // namespace

PortfolioSummary portfolio_summary(const ScenarioConfig& cfg, const Solution& sol) {
    if (!sol.has_assignment()) throw std::invalid_argument("summary requires a solution with an assignment");
    const double dt = cfg.grid.step_hours;
    const ContractTerms& c = cfg.contracts;
    const MarketPrices& p = cfg.prices;
    const double pppa_unit = (1.0 + c.loss_rate) * c.physical_ppa_price + c.grid_access_tariff;

    PortfolioSummary s;
    for (std::size_t t = 0; t < cfg.hours(); ++t) {
        double vppa = 0.0, pppa = 0.0, buy = 0.0, sell = 0.0, bd = 0.0, ubd = 0.0, go_buy = 0.0, go_sell = 0.0;
        for (std::size_t e = 0; e < cfg.site_count(); ++e) {
            vppa += sol.value(K::p_VPPA, e, t);
            pppa += sol.value(K::p_PPPA, e, t);
            buy += sol.value(K::p_DAM_Buy, e, t);
            sell += sol.value(K::p_DAM_Sell, e, t);
            bd += sol.value(K::h_BD, e, t);
            ubd += sol.value(K::h_UBD, e, t);
            go_buy += sol.value(K::n_GO_Buy, e, t);
            go_sell += sol.value(K::n_GO_Sell, e, t);
        }
        s.vppa_qty_mwh += vppa * dt;
        s.cfd_eur += (c.virtual_ppa_strike - p.dam_buy[t]) * vppa * dt;
        s.pppa_qty_mwh += pppa * dt;
        s.pppa_cost_eur += pppa_unit * pppa * dt;
        s.dam_buy_mwh += buy * dt;
        s.dam_sell_mwh += sell * dt;
        s.dam_net_eur += (p.dam_buy[t] * buy - p.dam_sell[t] * sell) * dt;
        s.bundled_qty_kg += bd;
        s.bundled_rev_eur += p.bundled_h2 * bd;
        s.unbundled_qty_kg += ubd;
        s.unbundled_rev_eur += p.unbundled_h2 * ubd;
        s.go_buy_units += go_buy;
        s.go_sell_units += go_sell;
        s.go_net_eur += p.go_buy * go_buy - p.go_sell * go_sell;
    }
    s.green_share = green_share(cfg, sol);
    return s;
}

const std::vector<std::string>& site_schedule_columns() {
    static const std::vector<std::string> cols = with_hour(site_kinds());
    return cols;
}

const std::vector<std::string>& portfolio_schedule_columns() {
    static const std::vector<std::string> cols = with_hour(portfolio_kinds());
    return cols;
}

void write_site_schedule(const ScenarioConfig& cfg, const Solution& sol, std::size_t site, std::ostream& out) {
    write_header(site_schedule_columns(), out);
    for (std::size_t t = 0; t < cfg.hours(); ++t) {
        out << t;
        for (K k : site_kinds()) out << ',' << fixed4(sol.value(k, site, t));
        out << '\n';
    }
}

void write_portfolio_schedule(const ScenarioConfig& cfg, const Solution& sol, std::ostream& out) {
    write_header(portfolio_schedule_columns(), out);
    for (std::size_t t = 0; t < cfg.hours(); ++t) {
        out << t;
        for (K k : portfolio_kinds()) out << ',' << fixed4(sol.portfolio(k, t));
        out << '\n';
    }
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

std::vector<std::filesystem::path> export_schedules(const ScenarioConfig& cfg, const Solution& sol,
                                                    const std::filesystem::path& dir) {
    if (!sol.has_assignment()) throw std::invalid_argument("schedules require a solution with an assignment");
    std::vector<std::filesystem::path> written;
    for (std::size_t e = 0; e < cfg.site_count(); ++e) {
        const auto path = dir / ("site_" + cfg.sites[e].site_id + ".csv");
        std::ofstream out = open_output(path);
        write_site_schedule(cfg, sol, e, out);
        if (!out) throw IoError("write failed for " + path.string());
        written.push_back(path);
    }
    const auto path = dir / "portfolio.csv";
    std::ofstream out = open_output(path);
    write_portfolio_schedule(cfg, sol, out);
    if (!out) throw IoError("write failed for " + path.string());
    written.push_back(path);
    return written;
}

} // namespace h2pf
