#include "wind/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wind {

namespace {

constexpr double kW = 720, kH = 480;
constexpr double kMl = 70, kMr = 20, kMt = 40, kMb = 50;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (const Vec2& p : s.points) {
            xmin = std::min(xmin, p.x); xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y);
        }
    if (!(xmin <= xmax)) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    if (xmin == xmax) { xmin -= 0.5; xmax += 0.5; }
    if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }
    const double pw = kW - kMl - kMr, ph = kH - kMt - kMb;
    auto sx = [&](double x) { return kMl + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return kMt + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<rect x=\"" << kMl << "\" y=\"" << kMt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";
    if (!title.empty())
        o << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
             "font-size=\"16\">" << title << "</text>\n";
    if (!x_label.empty())
        o << "<text x=\"" << kMl + pw / 2 << "\" y=\"" << kH - 10
          << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label
          << "</text>\n";
    if (!y_label.empty())
        o << "<text x=\"16\" y=\"" << kMt + ph / 2
          << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
          << kMt + ph / 2 << ")\">" << y_label << "</text>\n";
    // ticks
    for (int i = 0; i <= 5; ++i) {
        const double tx = xmin + (xmax - xmin) * i / 5.0;
        const double ty = ymin + (ymax - ymin) * i / 5.0;
        o << "<line x1=\"" << sx(tx) << "\" y1=\"" << kMt + ph << "\" x2=\""
          << sx(tx) << "\" y2=\"" << kMt + ph + 5 << "\" stroke=\"#333\"/>\n";
        o << "<text x=\"" << sx(tx) << "\" y=\"" << kMt + ph + 18
          << "\" text-anchor=\"middle\" font-size=\"10\">" << fmt(tx)
          << "</text>\n";
        o << "<line x1=\"" << kMl - 5 << "\" y1=\"" << sy(ty) << "\" x2=\""
          << kMl << "\" y2=\"" << sy(ty) << "\" stroke=\"#333\"/>\n";
        o << "<text x=\"" << kMl - 8 << "\" y=\"" << sy(ty) + 3
          << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(ty)
          << "</text>\n";
    }
    int li = 0;
    for (const auto& s : series) {
        if (s.scatter) {
            for (const Vec2& p : s.points)
                o << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y)
                  << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
        } else if (!s.points.empty()) {
            o << "<polyline fill=\"none\" stroke=\"" << s.color
              << "\" stroke-width=\"1.5\" points=\"";
            for (const Vec2& p : s.points)
                o << sx(p.x) << "," << sy(p.y) << " ";
            o << "\"/>\n";
        }
        if (!s.label.empty()) {
            const double ly = kMt + 16 + 16 * li++;
            o << "<rect x=\"" << kMl + 10 << "\" y=\"" << ly - 8
              << "\" width=\"10\" height=\"10\" fill=\"" << s.color << "\"/>\n";
            o << "<text x=\"" << kMl + 26 << "\" y=\"" << ly + 1
              << "\" font-size=\"11\">" << s.label << "</text>\n";
        }
    }
    o << "</svg>\n";
    return o.str();
}

void write_svg(const std::vector<PlotSeries>& series, const std::string& path,
               const std::string& title, const std::string& x_label,
               const std::string& y_label) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_svg: cannot open " + path);
    f << render_svg(series, title, x_label, y_label);
    if (!f) throw std::runtime_error("write_svg: write failed for " + path);
}

}  // namespace wind
