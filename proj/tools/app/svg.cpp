#include "svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace minecast::app {

namespace {

constexpr double panel_width  = 520.0;
constexpr double panel_height = 320.0;
constexpr double margin_left  = 70.0;
constexpr double margin_right = 20.0;
constexpr double margin_top   = 36.0;
constexpr double margin_bot   = 48.0;
constexpr double title_height = 32.0;

constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

/// 1, 2 or 5 times a power of ten, at least range / target.
double nice_step(double range, int target)
{
    const double raw  = range / target;
    const double mag  = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    if (norm <= 1.0) {
        return mag;
    }
    if (norm <= 2.0) {
        return 2.0 * mag;
    }
    if (norm <= 5.0) {
        return 5.0 * mag;
    }
    return 10.0 * mag;
}

struct Axis
{
    double lo   = 0.0;
    double hi   = 1.0;
    double step = 0.1;
};

Axis make_axis(double lo, double hi, int ticks)
{
    if (!(hi > lo)) {
        hi = lo + 1.0;
    }
    Axis axis;
    axis.step = nice_step(hi - lo, ticks);
    axis.lo   = std::floor(lo / axis.step) * axis.step;
    axis.hi   = std::ceil(hi / axis.step) * axis.step;
    return axis;
}

std::string tick_label(double value)
{
    if (std::abs(value) < 1e-12) {
        return "0";
    }
    return fmt::format("{:g}", value);
}

void render_panel(std::string& out, const ChartPanel& panel, double x0, double y0)
{
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = 0.0;
    double ymax = -xmin;
    for (const auto& s : panel.series) {
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0.0;
        xmax = 1.0;
        ymax = 1.0;
    }

    const Axis xa = make_axis(xmin, xmax, 6);
    const Axis ya = make_axis(ymin, ymax, 5);

    const double left   = x0 + margin_left;
    const double top    = y0 + margin_top;
    const double width  = panel_width - margin_left - margin_right;
    const double height = panel_height - margin_top - margin_bot;

    auto px = [&](double x) { return left + (x - xa.lo) / (xa.hi - xa.lo) * width; };
    auto py = [&](double y) { return top + (ya.hi - y) / (ya.hi - ya.lo) * height; };

    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"14\" font-weight=\"bold\">{}</text>\n", left, y0 + 22.0, escape(panel.title));

    // grid and ticks
    for (double y = ya.lo; y <= ya.hi + ya.step * 1e-6; y += ya.step) {
        out += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#e0e0e0\"/>\n", left, py(y), left + width, py(y));
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\" text-anchor=\"end\">{}</text>\n", left - 6.0, py(y) + 4.0, tick_label(y));
    }
    for (double x = xa.lo; x <= xa.hi + xa.step * 1e-6; x += xa.step) {
        out += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#f0f0f0\"/>\n", px(x), top, px(x), top + height);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n", px(x), top + height + 16.0, tick_label(x));
    }
    out += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" stroke=\"#333\"/>\n", left, top, width, height);

    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
                       left + width / 2.0, top + height + 36.0, escape(panel.x_label));
    out += fmt::format("<text transform=\"translate({:.1f},{:.1f}) rotate(-90)\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
                       x0 + 16.0, top + height / 2.0, escape(panel.y_label));

    for (std::size_t i = 0; i < panel.series.size(); ++i) {
        const auto& s     = panel.series[i];
        const char* color = palette[i % std::size(palette)];
        if (s.points.empty()) {
            continue;
        }

        std::string path;
        for (const auto& [x, y] : s.points) {
            path += fmt::format("{}{:.1f},{:.1f}", path.empty() ? "" : " ", px(x), py(y));
        }
        out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.8\"{} points=\"{}\"/>\n",
                           color, s.dashed ? " stroke-dasharray=\"6,4\"" : "", path);

        // legend, top right
        const double ly = top + 14.0 + 16.0 * static_cast<double>(i);
        const double lx = left + width - 150.0;
        out += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"{}\" stroke-width=\"2\"{}/>\n",
                           lx, ly - 4.0, lx + 20.0, ly - 4.0, color, s.dashed ? " stroke-dasharray=\"6,4\"" : "");
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"11\">{}</text>\n", lx + 26.0, ly, escape(s.label));
    }
}

}

std::string render_svg(const std::string& title, const std::vector<ChartPanel>& panels, int columns)
{
    columns         = std::max(1, columns);
    const int count = static_cast<int>(panels.size());
    const int rows  = std::max(1, (count + columns - 1) / columns);
    const int cols  = std::min(columns, std::max(1, count));

    const double width  = panel_width * cols;
    const double height = title_height + panel_height * rows;

    std::string out;
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\">\n",
                       width, height, width, height);
    out += fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", width, height);
    out += fmt::format("<text x=\"{:.1f}\" y=\"22\" font-size=\"16\" font-weight=\"bold\" text-anchor=\"middle\">{}</text>\n", width / 2.0, escape(title));

    for (int i = 0; i < count; ++i) {
        const double x0 = panel_width * (i % columns);
        const double y0 = title_height + panel_height * (i / columns);
        render_panel(out, panels[static_cast<std::size_t>(i)], x0, y0);
    }
    out += "</svg>\n";
    return out;
}

}
