#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace h2pf {

/// Plain comma-separated table with a header row. No quoting support:
/// every file this library reads or writes is purely numeric apart from ids.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::optional<std::size_t> column_index(const std::string& name) const;
};

/// Throws InputError on unreadable files or ragged rows.
CsvTable read_csv(const std::filesystem::path& path);

/// Fixed notation with four decimals; negative zero prints as 0.0000.
std::string fixed4(double value);

} // namespace h2pf
