#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "catbond/model2.hpp"
#include "catbond/rng.hpp"

namespace catbond {
namespace model2 {

struct McConfig {
    std::size_t n_paths = 100000;
    int steps_per_year = 256;  // rate-integral resolution
    std::uint64_t seed = 1;
    bool antithetic = false;
    int threads = 0;  // 0 = auto

    void validate() const;
};

// Joint Monte Carlo price at t = 0: loss, trigger and rate legs run on
// disjoint substreams; the payoff uses the exact trigger crossing time and
// only the rate integral is discretized.
Estimate mc_price(const Model2State& state, const McConfig& config);

struct SurvivalCurve {
    std::vector<double> times;
    std::vector<double> survival;
    std::vector<double> se;
};

// Empirical P(tau > u) on a grid with binomial standard errors.
SurvivalCurve mc_survival(const Model2State& state, std::span<const double> grid,
                          const McConfig& config);

}  // namespace model2
}  // namespace catbond
