#include "catbond/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "catbond/csv.hpp"

namespace catbond {

namespace {
constexpr int width = 900;
constexpr int height = 420;
constexpr int margin = 55;

const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return colors[i % 8];
}
}  // namespace

void write_svg_chart(std::ostream& os, const std::string& title,
                     const std::vector<SvgSeries>& series) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    if (!(xmax > xmin)) { xmin -= 0.5; xmax += 0.5; }
    if (!(ymax > ymin)) { ymin -= 0.5; ymax += 0.5; }

    auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto sy = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
       << title << "</text>\n";
    os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
       << "\" height=\"" << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << margin << "\" y=\"" << height - margin + 18
       << "\" font-size=\"11\">" << format_number(xmin) << "</text>\n";
    os << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 18
       << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(xmax) << "</text>\n";
    os << "<text x=\"" << margin - 6 << "\" y=\"" << height - margin
       << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(ymin) << "</text>\n";
    os << "<text x=\"" << margin - 6 << "\" y=\"" << margin + 6
       << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(ymax) << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        os << "<polyline fill=\"none\" stroke=\"" << palette(i) << "\" stroke-width=\"1.3\" points=\"";
        for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
            os << sx(s.x[k]) << ',' << sy(s.y[k]) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << width - margin - 4 << "\" y=\"" << margin + 16 + 15 * i
           << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << palette(i) << "\">" << s.label
           << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace catbond
