#include "catbond/model2.hpp"

#include <cmath>
#include <stdexcept>

#include "catbond/quadrature.hpp"

namespace catbond {
namespace model2 {

void Model2State::validate_for_pricing() const {
    loss.validate();
    contract.validate();
    rates.validate();
    if (contract.recovery != 0.0) {
        throw std::invalid_argument("model 2 pricing assumes full principal loss (recovery = 0)");
    }
    if (!loss.severity.has_finite_second_moment()) {
        throw std::invalid_argument(
            "model 2 pricing needs a severity with finite second moment (Pareto shape > 2)");
    }
}

double log_survival_exponent(const ShotNoiseSpec& loss, double threshold, double t,
                             double maturity) {
    if (t > maturity) throw std::invalid_argument("needs t <= maturity");
    if (t == maturity) return 0.0;
    const auto& severity = loss.severity;
    const double alpha = loss.growth;
    // integrand over calendar time s in [t, T]
    auto integrand = [&](double s) {
        return loss.claim_rate.at(s) * (severity.laplace(std::exp(alpha * (maturity - s)) / threshold) - 1.0);
    };
    double total = 0.0;
    double lo = t;
    for (double b : loss.claim_rate.breaks()) {  // integrate piecewise-smooth segments separately
        if (b <= lo) continue;
        if (b >= maturity) break;
        total += integrate(integrand, lo, b, 1e-10);
        lo = b;
    }
    total += integrate(integrand, lo, maturity, 1e-10);
    return total;
}

double survival(const Model2State& state, double u) {
    if (!(u >= 0.0)) throw std::invalid_argument("survival needs u >= 0");
    if (u == 0.0) return 1.0;
    return std::exp(log_survival_exponent(state.loss, state.contract.threshold, 0.0, u));
}

double trigger_time(const Model2State& state, const LossPath& path, double theta_draw) {
    const double level = state.contract.threshold * theta_draw;
    const double alpha = state.loss.growth;
    double loss_level = 0.0;
    double last_time = 0.0;
    auto continuous_crossing = [&](double until) -> double {
        if (alpha <= 0.0 || loss_level <= 0.0) return beyond_horizon;
        if (loss_level * std::exp(alpha * (until - last_time)) <= level) return beyond_horizon;
        return last_time + std::log(level / loss_level) / alpha;
    };
    for (const auto& ev : path.events()) {
        const double crossing = continuous_crossing(ev.time);
        if (crossing <= ev.time) return crossing;
        loss_level = loss_level * std::exp(alpha * (ev.time - last_time)) + ev.amount;
        last_time = ev.time;
        if (loss_level > level) return ev.time;
    }
    const double crossing = continuous_crossing(path.horizon());
    return crossing <= path.horizon() ? crossing : beyond_horizon;
}

double simulate_trigger(const Model2State& state, const LossPath& path, std::mt19937_64& rng) {
    std::exponential_distribution<double> unit_exp(1.0);
    return trigger_time(state, path, unit_exp(rng));
}

double intensity_rate(const Model2State& state, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("intensity_rate needs t >= 0");
    return state.loss.claim_rate.at(t) *
           (1.0 - state.loss.severity.laplace(1.0 / state.contract.threshold));
}

double dual_projection_rate(const Model2State& state, double t, double z_minus) {
    if (!(z_minus > 0.0 && z_minus <= 1.0)) {
        throw std::invalid_argument("dual_projection_rate needs z_minus in (0, 1]");
    }
    return z_minus * intensity_rate(state, t);
}

double pre_trigger_price(const Model2State& state, double t, double loss_level, double r_t) {
    state.validate_for_pricing();
    const double maturity = state.contract.maturity;
    if (!(t >= 0.0) || t > maturity) throw std::invalid_argument("needs 0 <= t <= maturity");
    if (!(loss_level >= 0.0)) throw std::invalid_argument("loss level must be >= 0");
    const double d = state.contract.threshold;
    const double exponent = log_survival_exponent(state.loss, d, t, maturity) -
                            std::expm1(state.loss.growth * (maturity - t)) * loss_level / d;
    return state.contract.principal * std::exp(exponent) *
           bond_price(state.rates, r_t, t, maturity);
}

double price(const Model2State& state, double t, double loss_level, double r_t, bool survived) {
    if (!survived) return 0.0;
    return pre_trigger_price(state, t, loss_level, r_t);
}

double jump_size(const Model2State& state, double event_time, double shot, double value_before) {
    if (event_time > state.contract.maturity) {
        throw std::invalid_argument("jump_size needs event_time <= maturity");
    }
    const double growth_gap =
        std::expm1(state.loss.growth * (state.contract.maturity - event_time));
    return value_before * std::expm1(-shot * growth_gap / state.contract.threshold);
}

}  // namespace model2
}  // namespace catbond
