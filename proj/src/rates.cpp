#include "catbond/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "catbond/parallel.hpp"

namespace catbond {

void CirParams::validate() const {
    if (!(initial_rate >= 0.0) || !std::isfinite(initial_rate)) {
        throw std::invalid_argument("CIR initial rate must be finite and >= 0");
    }
    if (!(mean_reversion > 0.0) || !(long_run_mean > 0.0) || !(volatility > 0.0)) {
        throw std::invalid_argument("CIR mean_reversion, long_run_mean, volatility must be > 0");
    }
}

double CirParams::stiffness() const {
    return std::sqrt(mean_reversion * mean_reversion + 2.0 * volatility * volatility);
}

double bond_price(const CirParams& p, double r_t, double t, double maturity) {
    p.validate();
    if (t > maturity) throw std::invalid_argument("bond_price needs t <= maturity");
    if (!(r_t >= 0.0)) throw std::invalid_argument("bond_price needs r_t >= 0");
    const double dt = maturity - t;
    const double g = p.mean_reversion;
    const double h = p.stiffness();
    // denominator h - g + e^{h dt}(h + g), kept in log form for stability
    const double den = (h - g) * std::exp(-h * dt) + (h + g);
    const double log_ratio = std::log(2.0 * h) + 0.5 * (g + h) * dt - h * dt - std::log(den);
    const double a = 2.0 * g * p.long_run_mean / (p.volatility * p.volatility) * log_ratio;
    const double b = 2.0 * std::expm1(h * dt) / ((h - g) + std::exp(h * dt) * (h + g));
    return std::exp(a - b * r_t);
}

CirTransition::CirTransition(const CirParams& p, double dt) {
    p.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("CIR transition step must be > 0");
    const double g = p.mean_reversion;
    const double s2 = p.volatility * p.volatility;
    dof_ = 4.0 * g * p.long_run_mean / s2;
    decay_ = std::exp(-g * dt);
    scale_ = s2 * (1.0 - decay_) / (4.0 * g);
}

double CirTransition::advance(double r, std::mt19937_64& rng) const {
    const double nc = r * decay_ / scale_;
    if (dof_ > 1.0) {
        std::normal_distribution<double> normal(0.0, 1.0);
        std::gamma_distribution<double> chi((dof_ - 1.0) / 2.0, 2.0);
        const double z = normal(rng) + std::sqrt(nc);
        return scale_ * (z * z + chi(rng));
    }
    std::poisson_distribution<long> mix(nc / 2.0);
    const long j = mix(rng);
    std::gamma_distribution<double> gamma((dof_ + 2.0 * static_cast<double>(j)) / 2.0, 2.0 * scale_);
    return gamma(rng);
}

void CirTransition::advance_pair(double& r_a, double& r_b, std::mt19937_64& rng) const {
    if (dof_ > 1.0) {
        std::normal_distribution<double> normal(0.0, 1.0);
        std::gamma_distribution<double> chi((dof_ - 1.0) / 2.0, 2.0);
        const double z = normal(rng);
        const double x = chi(rng);
        const double za = z + std::sqrt(r_a * decay_ / scale_);
        const double zb = -z + std::sqrt(r_b * decay_ / scale_);
        r_a = scale_ * (za * za + x);
        r_b = scale_ * (zb * zb + x);
        return;
    }
    r_a = advance(r_a, rng);
    r_b = advance(r_b, rng);
}

std::vector<double> simulate_rate_path(const CirParams& p, std::span<const double> grid,
                                       std::mt19937_64& rng) {
    p.validate();
    if (grid.empty() || grid[0] != 0.0) throw std::invalid_argument("rate grid must start at 0");
    std::vector<double> rates(grid.size());
    rates[0] = p.initial_rate;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double dt = grid[k] - grid[k - 1];
        if (!(dt > 0.0)) throw std::invalid_argument("rate grid must be strictly increasing");
        rates[k] = CirTransition(p, dt).advance(rates[k - 1], rng);
    }
    return rates;
}

Estimate mc_discount(const CirParams& p, double maturity, std::size_t n_paths, int steps_per_year,
                     std::uint64_t seed, bool antithetic, int threads) {
    p.validate();
    if (!(maturity > 0.0)) throw std::invalid_argument("maturity must be > 0");
    if (n_paths < 1000) throw std::invalid_argument("mc_discount needs n_paths >= 1000");
    if (steps_per_year < 1) throw std::invalid_argument("steps_per_year must be >= 1");

    const int steps = std::max(1, static_cast<int>(std::ceil(maturity * steps_per_year)));
    const double dt = maturity / steps;
    const CirTransition step(p, dt);

    if (!antithetic) {
        std::vector<double> disc(n_paths);
        parallel_chunks(n_paths, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                auto rng = substream(seed, stream::rate, i);
                double r = p.initial_rate;
                double integral = 0.0;
                for (int k = 0; k < steps; ++k) {
                    const double next = step.advance(r, rng);
                    integral += 0.5 * (r + next) * dt;
                    r = next;
                }
                disc[i] = std::exp(-integral);
            }
        });
        return mean_and_se(disc);
    }

    const std::size_t n_pairs = (n_paths + 1) / 2;
    std::vector<double> pair_mean(n_pairs);
    parallel_chunks(n_pairs, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto rng = substream(seed, stream::rate, i);
            double ra = p.initial_rate, rb = p.initial_rate;
            double ia = 0.0, ib = 0.0;
            for (int k = 0; k < steps; ++k) {
                const double pa = ra, pb = rb;
                step.advance_pair(ra, rb, rng);
                ia += 0.5 * (pa + ra) * dt;
                ib += 0.5 * (pb + rb) * dt;
            }
            pair_mean[i] = 0.5 * (std::exp(-ia) + std::exp(-ib));
        }
    });
    return mean_and_se(pair_mean);
}

}  // namespace catbond
