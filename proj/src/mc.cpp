#include "catbond/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "catbond/parallel.hpp"

namespace catbond {
namespace model2 {

void McConfig::validate() const {
    if (n_paths < 1000) throw std::invalid_argument("McConfig needs n_paths >= 1000");
    if (steps_per_year < 64) throw std::invalid_argument("McConfig needs steps_per_year >= 64");
}

namespace {

double survived_indicator(const Model2State& state, const McConfig& config, std::size_t path_index,
                          double horizon) {
    auto loss_rng = substream(config.seed, stream::loss, path_index);
    const LossPath path = simulate_loss_path(state.loss, horizon, loss_rng);
    auto trigger_rng = substream(config.seed, stream::trigger, path_index);
    return simulate_trigger(state, path, trigger_rng) > horizon ? 1.0 : 0.0;
}

}  // namespace

Estimate mc_price(const Model2State& state, const McConfig& config) {
    state.validate_for_pricing();
    config.validate();
    const double maturity = state.contract.maturity;
    const int steps = std::max(1, static_cast<int>(std::ceil(maturity * config.steps_per_year)));
    const double dt = maturity / steps;
    const CirTransition step(state.rates, dt);

    if (!config.antithetic) {
        std::vector<double> payoff(config.n_paths);
        parallel_chunks(config.n_paths, config.threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                auto rate_rng = substream(config.seed, stream::rate, i);
                double r = state.rates.initial_rate;
                double integral = 0.0;
                for (int k = 0; k < steps; ++k) {
                    const double next = step.advance(r, rate_rng);
                    integral += 0.5 * (r + next) * dt;
                    r = next;
                }
                payoff[i] = state.contract.principal * std::exp(-integral) *
                            survived_indicator(state, config, i, maturity);
            }
        });
        return mean_and_se(payoff);
    }

    // Antithetic pairs act on the rate leg (mirrored Gaussian component);
    // the loss and trigger legs of the two paths stay independent.
    const std::size_t n_pairs = (config.n_paths + 1) / 2;
    std::vector<double> pair_mean(n_pairs);
    parallel_chunks(n_pairs, config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t m = begin; m < end; ++m) {
            auto rate_rng = substream(config.seed, stream::rate, m);
            double ra = state.rates.initial_rate, rb = state.rates.initial_rate;
            double ia = 0.0, ib = 0.0;
            for (int k = 0; k < steps; ++k) {
                const double pa = ra, pb = rb;
                step.advance_pair(ra, rb, rate_rng);
                ia += 0.5 * (pa + ra) * dt;
                ib += 0.5 * (pb + rb) * dt;
            }
            const double pay_a = std::exp(-ia) * survived_indicator(state, config, 2 * m, maturity);
            const double pay_b =
                std::exp(-ib) * survived_indicator(state, config, 2 * m + 1, maturity);
            pair_mean[m] = state.contract.principal * 0.5 * (pay_a + pay_b);
        }
    });
    return mean_and_se(pair_mean);
}

SurvivalCurve mc_survival(const Model2State& state, std::span<const double> grid,
                          const McConfig& config) {
    state.loss.validate();
    state.contract.validate();
    config.validate();
    if (grid.empty()) throw std::invalid_argument("mc_survival needs a non-empty grid");
    const double horizon = *std::max_element(grid.begin(), grid.end());
    for (double u : grid) {
        if (!(u >= 0.0)) throw std::invalid_argument("survival grid times must be >= 0");
    }

    std::vector<double> triggers(config.n_paths);
    parallel_chunks(config.n_paths, config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto loss_rng = substream(config.seed, stream::loss, i);
            const LossPath path =
                simulate_loss_path(state.loss, std::max(horizon, 1e-12), loss_rng);
            auto trigger_rng = substream(config.seed, stream::trigger, i);
            triggers[i] = simulate_trigger(state, path, trigger_rng);
        }
    });

    SurvivalCurve curve;
    curve.times.assign(grid.begin(), grid.end());
    const double n = static_cast<double>(config.n_paths);
    for (double u : grid) {
        std::size_t alive = 0;
        for (double tau : triggers) {
            if (tau > u) ++alive;
        }
        const double p = static_cast<double>(alive) / n;
        curve.survival.push_back(p);
        curve.se.push_back(std::sqrt(std::max(p * (1.0 - p), 0.0) / n));
    }
    return curve;
}

}  // namespace model2
}  // namespace catbond
