#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "catbond/rng.hpp"
#include "catbond/severity.hpp"

namespace catbond {

// Claim-arrival intensity: constant, or piecewise-constant in time (the
// value on [break[k], break[k+1]) is rates[k]; rates.size() == breaks.size()+1).
class ArrivalIntensity {
public:
    static ArrivalIntensity constant(double rate);
    static ArrivalIntensity piecewise(std::vector<double> breaks, std::vector<double> rates);

    double at(double t) const;
    double max_rate() const;
    double integral(double a, double b) const;
    bool is_constant() const { return breaks_.empty(); }
    double constant_rate() const;  // rejects non-constant
    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<double>& rates() const { return rates_; }

private:
    ArrivalIntensity(std::vector<double> breaks, std::vector<double> rates);
    std::vector<double> breaks_;
    std::vector<double> rates_;
};

struct LossEvent {
    double time;    // theta_i, strictly increasing in (0, horizon]
    double amount;  // shot y_i >= 0
};

// Realized jump times and shots of an aggregate loss path. Event-driven:
// the path is never discretized in time.
class LossPath {
public:
    LossPath() = default;
    LossPath(double horizon, std::vector<LossEvent> events);  // validates ordering

    double horizon() const { return horizon_; }
    const std::vector<LossEvent>& events() const { return events_; }

private:
    double horizon_ = 0.0;
    std::vector<LossEvent> events_;
};

// Shot-noise aggregate loss: L_t = sum_{theta_i <= t} y_i exp(growth (t - theta_i)).
// growth = 0 collapses to a compound Poisson process.
struct ShotNoiseSpec {
    ArrivalIntensity claim_rate = ArrivalIntensity::constant(0.0);
    double growth = 0.0;  // alpha >= 0, 1/year
    SeverityModel severity = SeverityModel::exponential(1.0);

    void validate() const;
};

// Poisson arrival times on (0, horizon]: exponential inter-arrivals in the
// homogeneous case, thinning against max_rate otherwise.
std::vector<double> simulate_arrival_times(const ArrivalIntensity& intensity, double horizon,
                                           std::mt19937_64& rng);

LossPath simulate_loss_path(const ShotNoiseSpec& spec, double horizon, std::mt19937_64& rng);

// L_t, evaluated exactly from the events. Rejects t outside [0, horizon].
double loss_at(const LossPath& path, double growth, double t);

// Monte Carlo estimate of Psi(t, d) = P(L_t <= d) with binomial standard error.
Estimate aggregate_cdf_mc(const ShotNoiseSpec& spec, double t, double d, std::size_t n_paths,
                          std::uint64_t seed, int threads = 0);

// Compound-Poisson (growth = 0) aggregate CDF by Panjer recursion on a
// lattice with nearest-point mass rounding; the step is halved until two
// successive answers differ by less than conv_tol. Throws on non-convergence.
double panjer_cdf(double claim_rate, const SeverityModel& severity, double t, double d,
                  double grid_step, double conv_tol = 1e-4);

}  // namespace catbond
