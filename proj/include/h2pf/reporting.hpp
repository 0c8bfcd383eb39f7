#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "h2pf/domain.hpp"
#include "h2pf/solver.hpp"

namespace h2pf {

/// Daily portfolio aggregates in the column order of the published case
/// comparison. Quantities are energy (MWh), mass (kg) or certificate units;
/// net columns follow the cost convention (positive = money paid).
struct PortfolioSummary {
    double vppa_qty_mwh = 0.0;
    double cfd_eur = 0.0;            // positive when the company pays the generator
    double pppa_qty_mwh = 0.0;
    double pppa_cost_eur = 0.0;      // energy, losses and grid access
    double dam_buy_mwh = 0.0;
    double dam_sell_mwh = 0.0;
    double dam_net_eur = 0.0;        // purchases minus sales
    double bundled_qty_kg = 0.0;
    double bundled_rev_eur = 0.0;
    double unbundled_qty_kg = 0.0;
    double unbundled_rev_eur = 0.0;
    double go_buy_units = 0.0;
    double go_sell_units = 0.0;
    double go_net_eur = 0.0;         // purchases minus sales
    std::optional<double> green_share;

    /// Daily net cost: every cost column minus every revenue column.
    [[nodiscard]] double sum_eur() const {
        return cfd_eur + pppa_cost_eur + dam_net_eur - bundled_rev_eur - unbundled_rev_eur + go_net_eur;
    }
};

/// Recomputed from the assignment and the scenario prices; never from the solver objective.
PortfolioSummary portfolio_summary(const ScenarioConfig& cfg, const Solution& sol);

/// Column names of the per-site schedule CSV, `hour` first.
const std::vector<std::string>& site_schedule_columns();
const std::vector<std::string>& portfolio_schedule_columns();

void write_site_schedule(const ScenarioConfig& cfg, const Solution& sol, std::size_t site, std::ostream& out);
void write_portfolio_schedule(const ScenarioConfig& cfg, const Solution& sol, std::ostream& out);

/// Writes `site_<id>.csv` for every site plus `portfolio.csv` into `dir`,
/// creating it if needed. Returns the written paths. Throws IoError.
std::vector<std::filesystem::path> export_schedules(const ScenarioConfig& cfg, const Solution& sol,
                                                    const std::filesystem::path& dir);

/// Opens `path` for writing or throws IoError.
std::ofstream open_output(const std::filesystem::path& path);

} // namespace h2pf
