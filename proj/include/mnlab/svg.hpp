#pragma once
// Minimal static SVG plots: axes box, ticks, colored polylines. Inspection
// artifacts, not publication figures; no timestamps or external resources.

#include <string>
#include <vector>

namespace mnlab::svg {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    double stroke_width = 1.2;
};

class Plot {
public:
    Plot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void add(Series s) { series_.push_back(std::move(s)); }
    void write(const std::string& path) const;

private:
    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

}  // namespace mnlab::svg
