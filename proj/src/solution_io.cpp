#include "h2pf/solution_io.hpp"

#include <fstream>
#include <map>

#include "h2pf/model.hpp"

namespace h2pf {

using nlohmann::json;

namespace {

StatusKind status_from_string(const std::string& s) {
    for (StatusKind k : {StatusKind::Optimal, StatusKind::Infeasible, StatusKind::Unbounded, StatusKind::TimeLimit,
                         StatusKind::Error}) {
        if (s == to_string(k)) return k;
    }
    throw InputError("status: unknown value '" + s + "'");
}

std::map<std::string, VarKey> name_index(const ScenarioConfig& cfg) {
    std::map<std::string, VarKey> out;
    for (std::size_t k = 0; k < kVarKindCount; ++k) {
        const auto kind = static_cast<VarKind>(k);
        for (std::size_t t = 0; t < cfg.hours(); ++t) {
            if (is_site_kind(kind)) {
                for (std::size_t e = 0; e < cfg.site_count(); ++e) {
                    const VarKey key{kind, static_cast<int>(e), static_cast<int>(t)};
                    out.emplace(variable_name(cfg, key), key);
                }
            } else {
                const VarKey key{kind, kPortfolio, static_cast<int>(t)};
                out.emplace(variable_name(cfg, key), key);
            }
        }
    }
    return out;
}

} // namespace

json solution_to_json(const ScenarioConfig& cfg, const Solution& sol, int case_number) {
    json doc;
    doc["case"] = case_number;
    doc["status"] = to_string(sol.status.kind);
    doc["message"] = sol.status.message;
    doc["objective"] = sol.objective_value;
    json values = json::object();
    for (const auto& [key, v] : sol.assignment) values[variable_name(cfg, key)] = v;
    doc["values"] = std::move(values);
    return doc;
}

Solution solution_from_json(const ScenarioConfig& cfg, const json& doc) {
    if (!doc.is_object()) throw InputError("solution: expected an object");
    Solution sol;
    if (doc.contains("status")) {
        if (!doc["status"].is_string()) throw InputError("status: expected a string");
        sol.status.kind = status_from_string(doc["status"].get<std::string>());
    } else {
        sol.status.kind = StatusKind::Optimal;
    }
    if (doc.contains("message") && doc["message"].is_string()) sol.status.message = doc["message"].get<std::string>();
    if (doc.contains("objective")) {
        if (!doc["objective"].is_number()) throw InputError("objective: expected a number");
        sol.objective_value = doc["objective"].get<double>();
    }
    if (!doc.contains("values") || !doc["values"].is_object()) throw InputError("values: missing object");
    const auto index = name_index(cfg);
    for (const auto& [name, v] : doc["values"].items()) {
        auto it = index.find(name);
        if (it == index.end()) throw InputError("values." + name + ": unknown variable for this scenario");
        if (!v.is_number()) throw InputError("values." + name + ": expected a number");
        sol.assignment[it->second] = v.get<double>();
    }
    return sol;
}

LoadedSolution load_solution(const ScenarioConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path.string() + ": cannot open solution file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
    LoadedSolution out;
    out.solution = solution_from_json(cfg, doc);
    if (doc.contains("case")) {
        if (!doc["case"].is_number_integer()) throw InputError("case: expected an integer");
        out.case_number = doc["case"].get<int>();
    }
    return out;
}

} // namespace h2pf
