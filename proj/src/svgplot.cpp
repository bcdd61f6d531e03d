#include "svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginL = 70, kMarginR = 140, kMarginT = 40, kMarginB = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#000000",
                          "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

}  // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<PlotSeries>& series, bool log_y) {
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    bool any = false;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (log_y) {
                if (y <= 0.0) continue;
                y = std::log10(y);
            }
            if (!any) {
                x_min = x_max = x;
                y_min = y_max = y;
                any = true;
            } else {
                x_min = std::min(x_min, x);
                x_max = std::max(x_max, x);
                y_min = std::min(y_min, y);
                y_max = std::max(y_max, y);
            }
        }
    }
    if (x_max == x_min) x_max = x_min + 1;
    if (y_max == y_min) y_max = y_min + 1;

    const double plot_w = kWidth - kMarginL - kMarginR;
    const double plot_h = kHeight - kMarginT - kMarginB;
    const auto px = [&](double x) { return kMarginL + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto py = [&](double y) {
        return kMarginT + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // axes
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT + plot_h << "\" x2=\""
        << kMarginL + plot_w << "\" y2=\"" << kMarginT + plot_h
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT << "\" x2=\"" << kMarginL
        << "\" y2=\"" << kMarginT + plot_h << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 5.0;
        const double yv = y_min + (y_max - y_min) * i / 5.0;
        out << "<text x=\"" << px(xv) << "\" y=\"" << kMarginT + plot_h + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(xv) << "</text>\n";
        out << "<text x=\"" << kMarginL - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << (log_y ? "1e" + fmt(yv) : fmt(yv)) << "</text>\n";
        out << "<line x1=\"" << kMarginL << "\" y1=\"" << py(yv) << "\" x2=\""
            << kMarginL + plot_w << "\" y2=\"" << py(yv)
            << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    }
    out << "<text x=\"" << kMarginL + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << kMarginT + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << kMarginT + plot_h / 2 << ")\">" << y_label
        << "</text>\n";

    int color = 0;
    int legend_y = kMarginT + 10;
    for (const auto& s : series) {
        const char* stroke = kPalette[color % 8];
        ++color;
        std::ostringstream pts;
        bool open = false;
        const auto flush = [&]() {
            if (open) {
                out << "<polyline fill=\"none\" stroke=\"" << stroke
                    << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
            }
            pts.str("");
            open = false;
        };
        for (auto [x, y] : s.points) {
            double yy = y;
            if (!std::isfinite(x) || !std::isfinite(yy) || (log_y && yy <= 0.0)) {
                flush();
                continue;
            }
            if (log_y) yy = std::log10(yy);
            pts << px(x) << ',' << py(yy) << ' ';
            open = true;
        }
        flush();
        out << "<line x1=\"" << kMarginL + plot_w + 10 << "\" y1=\"" << legend_y << "\" x2=\""
            << kMarginL + plot_w + 34 << "\" y2=\"" << legend_y << "\" stroke=\"" << stroke
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kMarginL + plot_w + 40 << "\" y=\"" << legend_y + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
        legend_y += 18;
    }
    out << "</svg>\n";
}

}  // namespace mdiqkd
