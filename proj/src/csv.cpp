#include "h2pf/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "h2pf/domain.hpp"

namespace h2pf {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cell);
            cell.clear();
        } else if (ch != '\r') {
            cell.push_back(ch);
        }
    }
    out.push_back(cell);
    for (auto& c : out) {
        while (!c.empty() && (c.front() == ' ' || c.front() == '\t')) c.erase(c.begin());
        while (!c.empty() && (c.back() == ' ' || c.back() == '\t')) c.pop_back();
    }
    return out;
}

} // namespace

std::optional<std::size_t> CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return std::nullopt;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto cells = split_line(line);
        if (!have_header) {
            // Strip a UTF-8 byte order mark.
            if (cells[0].size() >= 3 && cells[0].compare(0, 3, "\xEF\xBB\xBF") == 0) cells[0].erase(0, 3);
            table.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw InputError(path.string() + " line " + std::to_string(line_no) + ": expected " +
                             std::to_string(table.header.size()) + " columns, found " +
                             std::to_string(cells.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    if (!have_header) throw InputError(path.string() + ": empty file");
    return table;
}

std::string fixed4(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    std::string s = buf;
    if (s == "-0.0000") s = "0.0000";
    return s;
}

} // namespace h2pf
