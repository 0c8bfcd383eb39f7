#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "h2pf/audit.hpp"
#include "h2pf/model.hpp"
#include "h2pf/runner.hpp"
#include "h2pf/solver.hpp"
#include "h2pf/synthetic.hpp"

namespace h2pf::test {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng(std::random_device{}());
        path_ = std::filesystem::temp_directory_path() / ("h2pf_" + tag + "_" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::size_t count_lines(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) ++n;
    return n;
}

/// Solve of `cfg` under case `n` with the default options.
inline Solution solve_case(const ScenarioConfig& cfg, int n) {
    return solve(build_model(case_scenario(cfg, n)));
}

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

/// One site, one hour, no storage, no GO trading: 5 MW of wind covers the
/// downstream process exactly; the rest of the electrolyzer can run on grid
/// power and sell hydrogen unbundled.
inline ScenarioConfig single_hour_fixture() {
    ScenarioConfig cfg;
    cfg.grid = {1, 1.0};
    SiteSpec s;
    s.site_id = "solo";
    s.electrolyzer = {20.0, 10.0, 0.5};
    s.renewables = {5.0, 0.0};
    s.storage.energy_min_mwh = 0.0;
    s.storage.energy_max_mwh = 0.0;
    s.grid_limit_mw = 30.0;
    cfg.sites = {s};
    cfg.contracts.physical_ppa_profile = {0.0};
    cfg.contracts.virtual_ppa_profile = {0.0};
    cfg.prices.dam_buy = {40.0};
    cfg.prices.dam_sell = {35.0};
    cfg.prices.bundled_h2 = 5.0;
    cfg.prices.unbundled_h2 = 3.0;
    cfg.prices.go_buy = 5.0;
    cfg.prices.go_sell = 4.0;
    cfg.policy.green_share = 0.0;
    cfg.policy.go_conversion = 1.0;
    cfg.policy.wind_cf = {1.0};
    cfg.policy.pv_cf = {0.0};
    cfg.case_config.per_site_ppa_profiles = proportional_ppa_split(cfg);
    return cfg;
}

} // namespace h2pf::test
