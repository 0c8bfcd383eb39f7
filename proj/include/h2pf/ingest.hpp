#pragma once

// Conversion of a raw dataset directory into a scenario document.
//
// Layout (all files comma-separated with a header row):
//   sites.csv        site_id, efficiency, capacity_mw, flexibility_rate,
//                    wind_capacity_mw, pv_capacity_mw, charge_efficiency,
//                    discharge_efficiency, max_charge_mw, max_discharge_mw,
//                    energy_min_mwh, energy_max_mwh[, grid_limit_mw]
//   timeseries.csv   hour, dam_buy, dam_sell, wind_cf, pv_cf,
//                    physical_ppa_mw, virtual_ppa_mw
//   parameters.csv   key, value
//   site_ppa.csv     optional: hour, site_id, physical_mw, virtual_mw

#include <filesystem>

#include "h2pf/domain.hpp"

namespace h2pf {

/// Throws InputError naming the first missing file, column, key or bad value.
/// Without site_ppa.csv the Case-1 split is proportional to electrolyzer
/// capacity. A missing grid_limit_mw defaults to 2 x (capacity + charge rate).
ScenarioConfig ingest_raw(const std::filesystem::path& raw_dir);

} // namespace h2pf
