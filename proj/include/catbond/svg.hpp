#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catbond {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal self-contained line chart (polylines + axis box + labels). CSV is
// the normative output; this is for quick visual inspection only.
void write_svg_chart(std::ostream& os, const std::string& title,
                     const std::vector<SvgSeries>& series);

}  // namespace catbond
