#include "catbond/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "catbond/parallel.hpp"

namespace catbond {

ArrivalIntensity::ArrivalIntensity(std::vector<double> breaks, std::vector<double> rates)
    : breaks_(std::move(breaks)), rates_(std::move(rates)) {
    if (rates_.size() != breaks_.size() + 1) {
        throw std::invalid_argument("piecewise intensity needs rates.size() == breaks.size() + 1");
    }
    if (!std::is_sorted(breaks_.begin(), breaks_.end()) ||
        std::adjacent_find(breaks_.begin(), breaks_.end()) != breaks_.end()) {
        throw std::invalid_argument("intensity breakpoints must be strictly increasing");
    }
    for (double r : rates_) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw std::invalid_argument("intensity values must be finite and >= 0");
        }
    }
}

ArrivalIntensity ArrivalIntensity::constant(double rate) { return ArrivalIntensity({}, {rate}); }

ArrivalIntensity ArrivalIntensity::piecewise(std::vector<double> breaks, std::vector<double> rates) {
    return ArrivalIntensity(std::move(breaks), std::move(rates));
}

double ArrivalIntensity::at(double t) const {
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    return rates_[static_cast<std::size_t>(it - breaks_.begin())];
}

double ArrivalIntensity::max_rate() const { return *std::max_element(rates_.begin(), rates_.end()); }

double ArrivalIntensity::integral(double a, double b) const {
    if (b < a) throw std::invalid_argument("intensity integral needs a <= b");
    if (breaks_.empty()) return rates_[0] * (b - a);
    double total = 0.0;
    double lo = a;
    for (std::size_t k = 0; k <= breaks_.size(); ++k) {
        const double seg_end = k < breaks_.size() ? breaks_[k] : b;
        const double hi = std::min(b, seg_end);
        if (hi > lo) total += rates_[k] * (hi - lo);
        lo = std::max(lo, hi);
        if (lo >= b) break;
    }
    return total;
}

double ArrivalIntensity::constant_rate() const {
    if (!is_constant()) throw std::logic_error("intensity is not constant");
    return rates_[0];
}

LossPath::LossPath(double horizon, std::vector<LossEvent> events)
    : horizon_(horizon), events_(std::move(events)) {
    if (!(horizon > 0.0)) throw std::invalid_argument("loss path horizon must be > 0");
    double prev = 0.0;
    for (const auto& ev : events_) {
        if (!(ev.time > prev) || ev.time > horizon_) {
            throw std::invalid_argument("event times must be strictly increasing in (0, horizon]");
        }
        if (!(ev.amount >= 0.0)) throw std::invalid_argument("shot amounts must be >= 0");
        prev = ev.time;
    }
}

void ShotNoiseSpec::validate() const {
    if (!(growth >= 0.0) || !std::isfinite(growth)) {
        throw std::invalid_argument("shot-noise growth rate must be finite and >= 0");
    }
}

std::vector<double> simulate_arrival_times(const ArrivalIntensity& intensity, double horizon,
                                           std::mt19937_64& rng) {
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
    const double bound = intensity.max_rate();
    if (!std::isfinite(bound)) throw std::invalid_argument("unbounded arrival intensity");
    std::vector<double> times;
    if (bound == 0.0) return times;
    std::exponential_distribution<double> gap(bound);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const bool homogeneous = intensity.is_constant();
    double t = 0.0;
    while (true) {
        t += gap(rng);
        if (t > horizon) break;
        if (homogeneous || unif(rng) * bound < intensity.at(t)) times.push_back(t);
    }
    return times;
}

LossPath simulate_loss_path(const ShotNoiseSpec& spec, double horizon, std::mt19937_64& rng) {
    spec.validate();
    const std::vector<double> times = simulate_arrival_times(spec.claim_rate, horizon, rng);
    std::vector<LossEvent> events;
    events.reserve(times.size());
    for (double t : times) events.push_back({t, spec.severity.sample(rng)});
    return LossPath(horizon, std::move(events));
}

double loss_at(const LossPath& path, double growth, double t) {
    if (!(t >= 0.0) || t > path.horizon()) {
        throw std::invalid_argument("loss evaluation time outside [0, horizon]");
    }
    double total = 0.0;
    for (const auto& ev : path.events()) {
        if (ev.time > t) break;
        total += ev.amount * std::exp(growth * (t - ev.time));
    }
    return total;
}

Estimate aggregate_cdf_mc(const ShotNoiseSpec& spec, double t, double d, std::size_t n_paths,
                          std::uint64_t seed, int threads) {
    spec.validate();
    if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
    if (!(d > 0.0)) throw std::invalid_argument("threshold must be > 0");
    if (n_paths < 1000) throw std::invalid_argument("aggregate_cdf_mc needs n_paths >= 1000");
    if (t == 0.0) return {1.0, 0.0};

    std::vector<double> below(n_paths);
    parallel_chunks(n_paths, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto rng = substream(seed, stream::loss, i);
            const LossPath path = simulate_loss_path(spec, t, rng);
            below[i] = loss_at(path, spec.growth, t) <= d ? 1.0 : 0.0;
        }
    });
    const double p = pairwise_sum(below) / static_cast<double>(n_paths);
    const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n_paths));
    return {p, se};
}

namespace {

// One lattice evaluation of the compound-Poisson CDF at d. Severity mass is
// rounded to the nearest lattice point j*h; mass at 0 folds into the claim
// count (Poisson with mean scaled by 1 - p0).
double panjer_cdf_on_lattice(double expected_claims, const SeverityModel& severity, double d,
                             double h) {
    const auto m = static_cast<std::size_t>(std::floor(d / h));
    std::vector<double> f(m + 1, 0.0);
    const double p0 = severity.cdf(std::min(0.5 * h, d));
    double prev = p0;
    for (std::size_t j = 1; j <= m; ++j) {
        const double c = severity.cdf((static_cast<double>(j) + 0.5) * h);
        f[j] = c - prev;
        prev = c;
    }
    const double lam = expected_claims * (1.0 - p0);
    if (lam > 0.0) {
        for (std::size_t j = 1; j <= m; ++j) f[j] /= (1.0 - p0);
    }
    std::vector<double> g(m + 1, 0.0);
    g[0] = std::exp(-lam);
    double cdf = g[0];
    for (std::size_t s = 1; s <= m; ++s) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= s; ++j) {
            acc += static_cast<double>(j) * f[j] * g[s - j];
        }
        g[s] = lam / static_cast<double>(s) * acc;
        cdf += g[s];
    }
    return cdf;
}

}  // namespace

double panjer_cdf(double claim_rate, const SeverityModel& severity, double t, double d,
                  double grid_step, double conv_tol) {
    if (!(claim_rate >= 0.0) || !(t >= 0.0)) {
        throw std::invalid_argument("panjer_cdf needs claim_rate >= 0 and t >= 0");
    }
    if (!(d > 0.0) || !(grid_step > 0.0)) {
        throw std::invalid_argument("panjer_cdf needs d > 0 and grid_step > 0");
    }
    const double expected_claims = claim_rate * t;
    if (expected_claims == 0.0) return 1.0;

    double h = std::min(grid_step, d);
    double value = panjer_cdf_on_lattice(expected_claims, severity, d, h);
    constexpr double max_lattice_points = 16384.0;  // keeps the O(m^2) recursion bounded
    while (d / (0.5 * h) <= max_lattice_points) {
        h *= 0.5;
        const double refined = panjer_cdf_on_lattice(expected_claims, severity, d, h);
        const double delta = std::abs(refined - value);
        value = refined;
        if (delta < conv_tol) return value;
    }
    throw std::runtime_error("panjer_cdf did not converge under grid halving");
}

}  // namespace catbond
