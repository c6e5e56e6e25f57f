#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "catbond/loss.hpp"

namespace catbond {

// Numbers are written with 10 significant digits throughout the CSV surface.
std::string format_number(double x);

// Loss path wire format: header "theta,y", one row per event.
void write_loss_path_csv(std::ostream& os, const LossPath& path);
LossPath read_loss_path_csv(std::istream& is, double horizon);

struct PricePathPoint {
    double t;
    double loss;
    double price;              // 0 after the trigger
    double pre_trigger_price;  // F-adapted price
    double discount;           // Q_t(T)
};

// Price path wire format: header "t,loss,price,pre_trigger_price,discount".
void write_price_path_csv(std::ostream& os, const std::vector<PricePathPoint>& points);

}  // namespace catbond
