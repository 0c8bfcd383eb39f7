// Writes one of the bundled synthetic scenarios as JSON.

#include <CLI11.hpp>

#include <iostream>

#include "h2pf/scenario_io.hpp"
#include "h2pf/synthetic.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate a synthetic scenario file"};
    std::string kind = "reference";
    std::uint64_t seed = 1;
    std::size_t sites = 3;
    std::size_t hours = 24;
    std::string out;
    app.add_option("--kind", kind, "reference, random or tiny")->check(CLI::IsMember({"reference", "random", "tiny"}));
    app.add_option("--seed", seed, "Generator seed");
    app.add_option("--sites", sites, "Site count for random scenarios")->check(CLI::Range(1, 50));
    app.add_option("--hours", hours, "Step count for random scenarios")->check(CLI::Range(1, 168));
    app.add_option("--out", out, "Output JSON path")->required();
    CLI11_PARSE(app, argc, argv);

    try {
        h2pf::ScenarioConfig cfg;
        if (kind == "reference") {
            cfg = h2pf::reference_scenario();
        } else if (kind == "random") {
            cfg = h2pf::random_scenario(seed, sites, hours);
        } else {
            cfg = h2pf::tiny_scenario(seed);
        }
        h2pf::save_scenario(cfg, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
