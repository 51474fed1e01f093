#include "esn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace esn {

namespace {

constexpr double kPanelW = 420.0;
constexpr double kPanelH = 300.0;
constexpr double kMarginL = 62.0;
constexpr double kMarginR = 16.0;
constexpr double kMarginT = 34.0;
constexpr double kMarginB = 46.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double p = 0.05 * (hi - lo);
        lo -= p;
        hi += p;
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

void render_panel(std::ostream& out, const SvgPanel& panel, double ox, double oy) {
    Extent ex, ey;
    for (const SvgSeries& s : panel.series) {
        for (double v : s.x) ex.add(v);
        for (double v : s.y) ey.add(v);
    }
    if (panel.has_baseline) ey.add(panel.baseline);
    ex.pad();
    ey.pad();

    const double plot_x = ox + kMarginL;
    const double plot_y = oy + kMarginT;
    const double plot_w = kPanelW - kMarginL - kMarginR;
    const double plot_h = kPanelH - kMarginT - kMarginB;
    auto sx = [&](double v) { return plot_x + (v - ex.lo) / (ex.hi - ex.lo) * plot_w; };
    auto sy = [&](double v) { return plot_y + plot_h - (v - ey.lo) / (ey.hi - ey.lo) * plot_h; };

    out << "<rect x='" << fmt(plot_x) << "' y='" << fmt(plot_y) << "' width='" << fmt(plot_w)
        << "' height='" << fmt(plot_h) << "' fill='none' stroke='#444' stroke-width='1'/>\n";
    out << "<text x='" << fmt(ox + kPanelW / 2) << "' y='" << fmt(oy + 18)
        << "' text-anchor='middle' font-size='13' font-family='sans-serif'>"
        << escape(panel.title) << "</text>\n";

    // Axis ticks: four intervals per axis.
    for (int k = 0; k <= 4; ++k) {
        const double fx = ex.lo + (ex.hi - ex.lo) * k / 4.0;
        const double fy = ey.lo + (ey.hi - ey.lo) * k / 4.0;
        out << "<line x1='" << fmt(sx(fx)) << "' y1='" << fmt(plot_y + plot_h) << "' x2='"
            << fmt(sx(fx)) << "' y2='" << fmt(plot_y + plot_h + 4) << "' stroke='#444'/>\n";
        out << "<text x='" << fmt(sx(fx)) << "' y='" << fmt(plot_y + plot_h + 16)
            << "' text-anchor='middle' font-size='10' font-family='sans-serif'>" << fmt(fx)
            << "</text>\n";
        out << "<line x1='" << fmt(plot_x - 4) << "' y1='" << fmt(sy(fy)) << "' x2='" << fmt(plot_x)
            << "' y2='" << fmt(sy(fy)) << "' stroke='#444'/>\n";
        out << "<text x='" << fmt(plot_x - 7) << "' y='" << fmt(sy(fy) + 3)
            << "' text-anchor='end' font-size='10' font-family='sans-serif'>" << fmt(fy)
            << "</text>\n";
    }
    out << "<text x='" << fmt(plot_x + plot_w / 2) << "' y='" << fmt(oy + kPanelH - 8)
        << "' text-anchor='middle' font-size='11' font-family='sans-serif'>"
        << escape(panel.x_label) << "</text>\n";
    out << "<text x='" << fmt(ox + 14) << "' y='" << fmt(plot_y + plot_h / 2)
        << "' text-anchor='middle' font-size='11' font-family='sans-serif' transform='rotate(-90 "
        << fmt(ox + 14) << " " << fmt(plot_y + plot_h / 2) << ")'>" << escape(panel.y_label)
        << "</text>\n";

    if (panel.has_baseline) {
        out << "<line x1='" << fmt(plot_x) << "' y1='" << fmt(sy(panel.baseline)) << "' x2='"
            << fmt(plot_x + plot_w) << "' y2='" << fmt(sy(panel.baseline))
            << "' stroke='#333' stroke-width='1' stroke-dasharray='6,4'/>\n";
    }

    std::size_t color = 0;
    double legend_y = plot_y + 14;
    for (const SvgSeries& s : panel.series) {
        const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill='none' stroke='" << stroke << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) out << ' ';
            out << fmt(sx(s.x[i])) << ',' << fmt(sy(s.y[i]));
        }
        out << "'/>\n";
        out << "<line x1='" << fmt(plot_x + plot_w - 86) << "' y1='" << fmt(legend_y - 3)
            << "' x2='" << fmt(plot_x + plot_w - 70) << "' y2='" << fmt(legend_y - 3)
            << "' stroke='" << stroke << "' stroke-width='2'/>\n";
        out << "<text x='" << fmt(plot_x + plot_w - 64) << "' y='" << fmt(legend_y)
            << "' font-size='10' font-family='sans-serif'>" << escape(s.label) << "</text>\n";
        legend_y += 13;
        ++color;
    }
}

}  // namespace

void write_svg_panels(const std::vector<SvgPanel>& panels, const std::string& path) {
    if (panels.empty()) throw std::invalid_argument("write_svg_panels: no panels");
    const std::size_t cols = panels.size() > 1 ? 2 : 1;
    const std::size_t rows = (panels.size() + cols - 1) / cols;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_svg_panels: cannot open " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << fmt(cols * kPanelW) << "' height='"
        << fmt(rows * kPanelH) << "' viewBox='0 0 " << fmt(cols * kPanelW) << " "
        << fmt(rows * kPanelH) << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i)
        render_panel(out, panels[i], static_cast<double>(i % cols) * kPanelW,
                     static_cast<double>(i / cols) * kPanelH);
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write_svg_panels: write failed for " + path);
}

}  // namespace esn
