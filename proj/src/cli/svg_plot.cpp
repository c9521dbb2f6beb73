#include "warptrend/cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "warptrend/cli/panel_io.hpp"

namespace warptrend::cli {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

std::string palette_color(std::size_t k) {
    static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return colors[k % 10];
}

std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series) {
    const double left = 70, right = 20, top = 36, bottom = 48;
    const double pw = spec.width - left - right;
    const double ph = spec.height - top - bottom;

    auto ty = [&](double y) { return spec.log_y ? std::log10(y) : y; };
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Series& s : series) {
        for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
            if (spec.log_y && !(s.y[k] > 0.0)) continue;
            xmin = std::min(xmin, s.x[k]);
            xmax = std::max(xmax, s.x[k]);
            ymin = std::min(ymin, ty(s.y[k]));
            ymax = std::max(ymax, ty(s.y[k]));
        }
    }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - ty(y)) / (ymax - ymin) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << fmt(spec.width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(spec.title) << "</text>\n";
    o << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw) << "\" height=\""
      << fmt(ph) << "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 4.0;
        const double yv = ymin + (ymax - ymin) * k / 4.0;
        const double yl = spec.log_y ? std::pow(10.0, yv) : yv;
        o << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(top + ph + 16) << "\" text-anchor=\"middle\">"
          << tick_label(xv) << "</text>\n";
        o << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(top + (ymax - yv) / (ymax - ymin) * ph + 4)
          << "\" text-anchor=\"end\">" << tick_label(yl) << "</text>\n";
    }
    o << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(spec.height - 10.0)
      << "\" text-anchor=\"middle\">" << escape(spec.xlabel) << "</text>\n";
    o << "<text x=\"16\" y=\"" << fmt(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fmt(top + ph / 2) << ")\">" << escape(spec.ylabel + (spec.log_y ? " (log)" : "")) << "</text>\n";

    int legend_row = 0;
    for (const Series& s : series) {
        o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"" << fmt(s.width) << "\"";
        if (s.dashed) o << " stroke-dasharray=\"5,3\"";
        o << " points=\"";
        for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
            if (spec.log_y && !(s.y[k] > 0.0)) continue;
            o << fmt(px(s.x[k])) << "," << fmt(py(s.y[k])) << " ";
        }
        o << "\"/>\n";
        if (!s.label.empty()) {
            const double ly = top + 14 + 14 * legend_row++;
            o << "<line x1=\"" << fmt(left + pw - 120) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
              << fmt(left + pw - 100) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << s.color << "\"/>\n";
            o << "<text x=\"" << fmt(left + pw - 95) << "\" y=\"" << fmt(ly) << "\">" << escape(s.label)
              << "</text>\n";
        }
    }
    o << "</svg>\n";
    return o.str();
}

void write_svg(const std::filesystem::path& path, const PlotSpec& spec, const std::vector<Series>& series) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError(path.string() + ": cannot write file");
    file << render_svg(spec, series);
}

}  // namespace warptrend::cli
