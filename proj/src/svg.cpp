#include "mnlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace mnlab::svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void Plot::write(const std::string& path) const {
    constexpr double W = 640, H = 440, ml = 64, mr = 16, mt = 34, mb = 46;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    for (const auto& s : series_)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x0 = std::min(x0, s.x[i]); x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]); y1 = std::max(y1, s.y[i]);
        }
    if (!(x0 < x1)) { x0 -= 0.5; x1 += 0.5; }
    if (!(y0 < y1)) { y0 -= 0.5; y1 += 0.5; }
    const double ypad = 0.05 * (y1 - y0);
    y0 -= ypad; y1 += ypad;

    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

    std::ofstream f(path);
    if (!f) throw std::runtime_error("svg: cannot open " + path + " for writing");
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
      << H - mt - mb << "\" fill=\"none\" stroke=\"#444\"/>\n"
      << "<text x=\"" << 0.5 * W << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\" "
         "font-family=\"sans-serif\">" << title_ << "</text>\n";

    for (int i = 0; i <= 5; ++i) {
        const double xv = x0 + (x1 - x0) * i / 5.0;
        const double yv = y0 + (y1 - y0) * i / 5.0;
        f << "<line x1=\"" << px(xv) << "\" y1=\"" << H - mb << "\" x2=\"" << px(xv) << "\" y2=\""
          << H - mb + 4 << "\" stroke=\"#444\"/>\n"
          << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 17
          << "\" text-anchor=\"middle\" font-size=\"10\" font-family=\"sans-serif\">" << num(xv)
          << "</text>\n"
          << "<line x1=\"" << ml - 4 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml << "\" y2=\""
          << py(yv) << "\" stroke=\"#444\"/>\n"
          << "<text x=\"" << ml - 7 << "\" y=\"" << py(yv) + 3
          << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">" << num(yv)
          << "</text>\n";
    }
    f << "<text x=\"" << 0.5 * W << "\" y=\"" << H - 8
      << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" << x_label_
      << "</text>\n"
      << "<text x=\"14\" y=\"" << 0.5 * H
      << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\" transform=\"rotate(-90 14 "
      << 0.5 * H << ")\">" << y_label_ << "</text>\n";

    for (const auto& s : series_) {
        f << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
          << s.stroke_width << "\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            f << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
        }
        f << "\"/>\n";
    }
    f << "</svg>\n";
}

}  // namespace mnlab::svg
