#include "h2pf/objective.hpp"

#include <stdexcept>

namespace h2pf {

CostBreakdown objective_breakdown(const ScenarioConfig& cfg, const Solution& sol) {
    if (!sol.has_assignment()) {
        throw std::invalid_argument(std::string("no feasible assignment (status ") + to_string(sol.status.kind) + ")");
    }
    const double dt = cfg.grid.step_hours;
    const ContractTerms& c = cfg.contracts;
    const MarketPrices& p = cfg.prices;
    using K = VarKind;

    CostBreakdown b;
    for (std::size_t t = 0; t < cfg.hours(); ++t) {
        b.hydrogen_revenue += p.bundled_h2 * sol.portfolio(K::h_BD_pf, t) + p.unbundled_h2 * sol.portfolio(K::h_UBD_pf, t);
        b.certificate_net += p.go_sell * sol.portfolio(K::n_GO_Sell_pf, t) - p.go_buy * sol.portfolio(K::n_GO_Buy_pf, t);
        b.electricity_market_net +=
            (p.dam_sell[t] * sol.portfolio(K::p_DAM_Sell_pf, t) - p.dam_buy[t] * sol.portfolio(K::p_DAM_Buy_pf, t)) * dt;
        const double pppa = sol.portfolio(K::P_PPPA_pf, t);
        b.physical_ppa_cost += ((1.0 + c.loss_rate) * c.physical_ppa_price + c.grid_access_tariff) * pppa * dt;
        b.cfd_settlement += (c.virtual_ppa_strike - p.dam_buy[t]) * sol.portfolio(K::P_VPPA_pf, t) * dt;
    }
    return b;
}

} // namespace h2pf
