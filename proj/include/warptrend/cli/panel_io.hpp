#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "warptrend/grid.hpp"

namespace warptrend::cli {

/// Unreadable or malformed input; maps to exit status 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A panel of observations on a common uniform grid. If the file carried a
/// time column its original range is kept for labeling.
struct Panel {
    std::vector<std::string> names;
    std::vector<GridFunction> observations;
    std::optional<std::pair<double, double>> time_range;
};

/// Raw numeric table: header names and one vector per column.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

Table parse_table(std::istream& in, const std::string& source);
Table read_table(const std::filesystem::path& path);

/// A leading column named "t" or "time" (any case) is taken as time stamps
/// and rescaled onto [0,1]; irregular stamps are interpolated onto the
/// uniform grid with the same number of rows.
Panel panel_from_table(const Table& table, const std::string& source, std::size_t min_columns = 2);
Panel read_panel(const std::filesystem::path& path, std::size_t min_columns = 2);

std::string format_number(double x);

/// Writes columns of equal length under the given header.
void write_table(const std::filesystem::path& path, std::span<const std::string> header,
                 std::span<const std::vector<double>> columns);

/// Writes a grid column "t" followed by one column per function.
void write_functions(const std::filesystem::path& path, std::span<const std::string> names,
                     std::span<const GridFunction> fs);

}  // namespace warptrend::cli
