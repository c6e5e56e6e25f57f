#include "catbond/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace catbond {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

void write_loss_path_csv(std::ostream& os, const LossPath& path) {
    os << "theta,y\n";
    for (const auto& ev : path.events()) {
        os << format_number(ev.time) << ',' << format_number(ev.amount) << '\n';
    }
}

LossPath read_loss_path_csv(std::istream& is, double horizon) {
    std::string line;
    if (!std::getline(is, line) || line != "theta,y") {
        throw std::runtime_error("loss path CSV must start with header 'theta,y'");
    }
    std::vector<LossEvent> events;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("malformed loss path row: " + line);
        events.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return LossPath(horizon, std::move(events));
}

void write_price_path_csv(std::ostream& os, const std::vector<PricePathPoint>& points) {
    os << "t,loss,price,pre_trigger_price,discount\n";
    for (const auto& p : points) {
        os << format_number(p.t) << ',' << format_number(p.loss) << ',' << format_number(p.price)
           << ',' << format_number(p.pre_trigger_price) << ',' << format_number(p.discount)
           << '\n';
    }
}

}  // namespace catbond
