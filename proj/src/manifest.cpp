#include "h2pf/manifest.hpp"

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>

#include <openssl/evp.h>

#include "h2pf/reporting.hpp"
#include "h2pf/scenario_io.hpp"

namespace h2pf {

std::string sha256_hex(const std::string& bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xF]);
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path.string() + ": cannot open for hashing");
    return sha256_hex(std::string(std::istreambuf_iterator<char>(in), {}));
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunManifest make_manifest(const std::filesystem::path& scenario_path, const ScenarioConfig& cfg,
                          std::vector<int> cases, const RunOptions& opts, const std::filesystem::path& out_dir) {
    RunManifest m;
    m.scenario_path = scenario_path;
    m.cases = std::move(cases);
    m.options = opts;
    m.output_dir = out_dir;
    m.timestamp = utc_timestamp();
    m.scenario_sha256 = sha256_file(scenario_path);
    m.resolved_sha256 = sha256_hex(scenario_to_json(cfg).dump());
    return m;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
    nlohmann::json doc;
    doc["scenario"] = m.scenario_path.string();
    doc["cases"] = m.cases;
    doc["options"] = {{"relative_gap", m.options.solve.relative_gap},
                      {"time_limit_s", m.options.solve.time_limit_s},
                      {"threads_hint", m.options.solve.threads_hint},
                      {"random_seed", m.options.solve.random_seed},
                      {"backend", m.options.backend},
                      {"audit_tolerance", m.options.audit_tolerance}};
    doc["output_dir"] = m.output_dir.string();
    doc["tool_version"] = m.tool_version;
    doc["timestamp"] = m.timestamp;
    doc["hashes"] = {{"scenario_file_sha256", m.scenario_sha256}, {"resolved_scenario_sha256", m.resolved_sha256}};
    return doc;
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << manifest_to_json(m).dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace h2pf
