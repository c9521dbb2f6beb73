#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace warptrend::cli {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    double width = 1.5;
    bool dashed = false;
    std::string label;
};

struct PlotSpec {
    std::string title;
    std::string xlabel = "t";
    std::string ylabel;
    bool log_y = false;
    int width = 640;
    int height = 400;
};

std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series);
void write_svg(const std::filesystem::path& path, const PlotSpec& spec, const std::vector<Series>& series);

/// Cycles through a fixed qualitative palette.
std::string palette_color(std::size_t k);

}  // namespace warptrend::cli
