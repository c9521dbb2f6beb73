#include "warptrend/cli/panel_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace warptrend::cli {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::optional<double> parse_number(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    const char* first = cell.data();
    if (*first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
    return v;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

Table parse_table(std::istream& in, const std::string& source) {
    Table table;
    std::string line;
    std::size_t lineno = 0;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_row(line);
        if (first_row) {
            first_row = false;
            const bool numeric = std::all_of(cells.begin(), cells.end(),
                                             [](const std::string& c) { return parse_number(c).has_value(); });
            if (!numeric) {
                table.header = std::move(cells);
                table.columns.resize(table.header.size());
                continue;
            }
            for (std::size_t c = 0; c < cells.size(); ++c) table.header.push_back("c" + std::to_string(c + 1));
            table.columns.resize(cells.size());
        }
        if (cells.size() != table.columns.size())
            throw InputError(source + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(table.columns.size()) + " cells, found " +
                             std::to_string(cells.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::optional<double> v = parse_number(cells[c]);
            if (!v || !std::isfinite(*v))
                throw InputError(source + ":" + std::to_string(lineno) + ": column " +
                                 std::to_string(c + 1) + ": '" + cells[c] + "' is not a finite number");
            table.columns[c].push_back(*v);
        }
    }
    if (table.columns.empty() || table.columns[0].empty())
        throw InputError(source + ": no data rows");
    return table;
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path.string() + ": cannot open file");
    return parse_table(in, path.string());
}

Panel panel_from_table(const Table& table, const std::string& source, std::size_t min_columns) {
    std::size_t first = 0;
    std::optional<std::vector<double>> times;
    if (!table.header.empty()) {
        const std::string h = lower(table.header[0]);
        if (h == "t" || h == "time") {
            times = table.columns[0];
            first = 1;
        }
    }
    const std::size_t count = table.columns.size() - first;
    if (count < min_columns)
        throw InputError(source + ": need at least " + std::to_string(min_columns) +
                         " observations, found " + std::to_string(count));
    const std::size_t m = table.columns[0].size();
    if (m < 3) throw InputError(source + ": need at least 3 samples per observation, found " + std::to_string(m));

    Panel panel;
    const Grid grid(m);
    bool uniform = true;
    if (times) {
        const std::vector<double>& t = *times;
        for (std::size_t k = 1; k < m; ++k)
            if (!(t[k] > t[k - 1]))
                throw InputError(source + ": time column is not strictly increasing at row " +
                                 std::to_string(k + 1));
        panel.time_range = std::make_pair(t.front(), t.back());
        const double span = t.back() - t.front();
        for (std::size_t k = 0; k < m && uniform; ++k)
            uniform = std::abs((t[k] - t.front()) / span - grid[k]) <= 1e-9;
    }
    for (std::size_t c = first; c < table.columns.size(); ++c) {
        panel.names.push_back(table.header[c]);
        if (times && !uniform)
            panel.observations.push_back(resample_to_grid(table.columns[c], *times, grid));
        else
            panel.observations.emplace_back(grid, table.columns[c]);
    }
    return panel;
}

Panel read_panel(const std::filesystem::path& path, std::size_t min_columns) {
    return panel_from_table(read_table(path), path.string(), min_columns);
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_table(const std::filesystem::path& path, std::span<const std::string> header,
                 std::span<const std::vector<double>> columns) {
    if (header.size() != columns.size())
        throw std::invalid_argument("write_table: header and column counts differ");
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (const auto& c : columns)
        if (c.size() != rows) throw std::invalid_argument("write_table: ragged columns");
    std::ostringstream out;
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_number(columns[c][r]);
        out << '\n';
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError(path.string() + ": cannot write file");
    file << out.str();
    if (!file) throw InputError(path.string() + ": write failed");
}

void write_functions(const std::filesystem::path& path, std::span<const std::string> names,
                     std::span<const GridFunction> fs) {
    if (fs.empty()) throw std::invalid_argument("write_functions: nothing to write");
    std::vector<std::string> header{"t"};
    header.insert(header.end(), names.begin(), names.end());
    std::vector<std::vector<double>> cols;
    cols.emplace_back(fs[0].grid().points().begin(), fs[0].grid().points().end());
    for (const GridFunction& f : fs) cols.emplace_back(f.values().begin(), f.values().end());
    write_table(path, header, cols);
}

}  // namespace warptrend::cli
