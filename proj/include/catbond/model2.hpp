#pragma once

#include <limits>
#include <random>

#include "catbond/contract.hpp"
#include "catbond/loss.hpp"
#include "catbond/rates.hpp"

namespace catbond {
namespace model2 {

// Generalized Cox trigger: tau = inf{t : L_t / D > Theta} with Theta a unit
// exponential independent of losses and rates. The conditional survival
// process is Z_t = exp(-L_t / D).
struct Model2State {
    ShotNoiseSpec loss;
    CatBondContract contract;
    CirParams rates;

    // Pricing additionally requires recovery == 0 and a severity with a
    // finite second moment (rules out Pareto with shape <= 2).
    void validate_for_pricing() const;
};

inline constexpr double beyond_horizon = std::numeric_limits<double>::infinity();

// lambda^N-weighted integral of (phi(e^{growth v}/threshold) - 1) over the
// window [t, T] in reversed time; the common exponent of the survival
// function and of the closed-form price.
double log_survival_exponent(const ShotNoiseSpec& loss, double threshold, double t, double maturity);

// Survival function c(u) = P(tau > u).
double survival(const Model2State& state, double u);

// Exact trigger time on [0, path.horizon]: jumps are checked event by event
// and the continuous crossing between events is solved in closed form.
// Returns beyond_horizon when the path never crosses.
double simulate_trigger(const Model2State& state, const LossPath& path, std::mt19937_64& rng);
double trigger_time(const Model2State& state, const LossPath& path, double theta_draw);

// Intensity rate of the trigger at time t: lambda^N(t) (1 - phi(1/D)).
double intensity_rate(const Model2State& state, double t);

// Density of the dual predictable projection at time t, given Z_{t-}:
// z_minus * intensity_rate(t). Increasing in t along any path.
double dual_projection_rate(const Model2State& state, double t, double z_minus);

// F-adapted pre-trigger price at time t given current aggregate loss and
// short rate; coincides with the price while the trigger has not occurred.
double pre_trigger_price(const Model2State& state, double t, double loss_level, double r_t);

// Zero-coupon CAT bond price: indicator * pre-trigger price.
double price(const Model2State& state, double t, double loss_level, double r_t, bool survived);

// Negative price jump at a catastrophe event:
// value_before * (exp(-shot (e^{growth (T - event_time)} - 1)/D) - 1).
double jump_size(const Model2State& state, double event_time, double shot, double value_before);

}  // namespace model2
}  // namespace catbond
