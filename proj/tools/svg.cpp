#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace memdecide::cli {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 460;
constexpr double kLeft = 70;
constexpr double kRight = 190;
constexpr double kTop = 40;
constexpr double kBottom = 55;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s)
{
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

std::string num(double v)
{
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.4g", v);
    return buf.data();
}

std::string coord(double v)
{
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.2f", v);
    return buf.data();
}

}  // namespace

void write_line_chart(std::ostream& out, const ChartSpec& spec, const std::vector<Series>& series)
{
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (spec.log_x && !(x > 0.0)) continue;
            const double xv = spec.log_x ? std::log10(x) : x;
            x_lo = std::min(x_lo, xv);
            x_hi = std::max(x_hi, xv);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    if (!(x_hi > x_lo)) {
        x_lo = std::isfinite(x_lo) ? x_lo - 1 : 0;
        x_hi = x_lo + 2;
    }
    if (spec.y_hi > spec.y_lo) {
        y_lo = spec.y_lo;
        y_hi = spec.y_hi;
    } else if (!(y_hi > y_lo)) {
        y_lo = std::isfinite(y_lo) ? y_lo - 1 : 0;
        y_hi = y_lo + 2;
    }

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) {
        const double xv = spec.log_x ? std::log10(x) : x;
        return kLeft + (xv - x_lo) / (x_hi - x_lo) * pw;
    };
    auto py = [&](double y) { return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * ph; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"15\">" << escape(spec.title)
        << "</text>\n";
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
        << ph << "\" fill=\"none\" stroke=\"#444\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double fx = x_lo + (x_hi - x_lo) * i / 5.0;
        const double xv = spec.log_x ? std::pow(10.0, fx) : fx;
        const double sx = kLeft + pw * i / 5.0;
        out << "<line x1=\"" << coord(sx) << "\" y1=\"" << kTop + ph << "\" x2=\"" << coord(sx)
            << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << coord(sx) << "\" y=\"" << kTop + ph + 19
            << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
        const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
        const double sy = py(yv);
        out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << coord(sy) << "\" x2=\"" << kLeft
            << "\" y2=\"" << coord(sy) << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << coord(sy + 4)
            << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
    }
    out << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
    out << "<text transform=\"translate(16," << coord(kTop + ph / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % kPalette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
        bool first = true;
        for (const auto& [x, y] : s.points) {
            if (spec.log_x && !(x > 0.0)) continue;
            out << (first ? "" : " ") << coord(px(x)) << ',' << coord(py(y));
            first = false;
        }
        out << "\"/>\n";
        const double ly = kTop + 14 + 18.0 * static_cast<double>(k);
        out << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << coord(ly) << "\" x2=\""
            << kWidth - kRight + 32 << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kWidth - kRight + 38 << "\" y=\"" << coord(ly + 4) << "\">"
            << escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace memdecide::cli
