#pragma once

#include "h2pf/domain.hpp"
#include "h2pf/solver.hpp"

namespace h2pf {

/// The five daily profit components, recomputed from prices and the
/// assignment. Costs are stored as positive numbers.
struct CostBreakdown {
    double hydrogen_revenue = 0.0;      // bundled + unbundled sales
    double certificate_net = 0.0;       // GO sales minus GO purchases
    double electricity_market_net = 0.0; // DAM sales minus DAM purchases
    double physical_ppa_cost = 0.0;     // energy, grid access and losses
    double cfd_settlement = 0.0;        // positive when the company pays the generator

    /// Signed total; equals the solver objective.
    [[nodiscard]] double profit() const {
        return hydrogen_revenue + certificate_net + electricity_market_net - physical_ppa_cost - cfd_settlement;
    }
    /// Daily net cost, the negated profit.
    [[nodiscard]] double net_cost() const { return -profit(); }
};

/// Throws std::invalid_argument when `sol` carries no assignment.
CostBreakdown objective_breakdown(const ScenarioConfig& cfg, const Solution& sol);

} // namespace h2pf
