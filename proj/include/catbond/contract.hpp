#pragma once

#include <stdexcept>

namespace catbond {

// Zero-coupon CAT bond: pays principal at maturity unless the trigger
// occurs first, in which case the investor receives recovery * principal.
struct CatBondContract {
    double principal = 1.0;
    double recovery = 0.0;   // delta in [0, 1)
    double threshold = 1.0;  // D > 0, loss units
    double maturity = 1.0;   // T > 0, years

    void validate() const {
        if (!(principal > 0.0)) throw std::invalid_argument("principal must be > 0");
        if (!(recovery >= 0.0 && recovery < 1.0)) {
            throw std::invalid_argument("recovery fraction must lie in [0, 1)");
        }
        if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be > 0");
        if (!(maturity > 0.0)) throw std::invalid_argument("maturity must be > 0");
    }
};

}  // namespace catbond
