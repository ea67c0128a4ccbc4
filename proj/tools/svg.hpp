// Static SVG line charts for traces and accuracy curves.
#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace memdecide::cli {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    // Fixed y-range when lo < hi, otherwise fitted to the data.
    double y_lo = 0.0;
    double y_hi = 0.0;
};

void write_line_chart(std::ostream& out, const ChartSpec& spec, const std::vector<Series>& series);

}  // namespace memdecide::cli
