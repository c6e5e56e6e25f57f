#include "catbond/model1.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "catbond/parallel.hpp"

namespace catbond {
namespace model1 {

void Model1Spec::validate() const {
    loss.validate();
    contract.validate();
    if (!(short_rate >= 0.0) || !std::isfinite(short_rate)) {
        throw std::invalid_argument("short rate must be finite and >= 0");
    }
    if (const auto* pois = std::get_if<PoissonCovering>(&covering)) {
        if (!(pois->rate >= 0.0)) throw std::invalid_argument("covering rate must be >= 0");
    } else {
        const auto& det = std::get<DeterministicCovering>(covering);
        double prev = 0.0;
        for (double t : det.times) {
            if (!(t > prev)) {
                throw std::invalid_argument("deterministic covering times must be strictly increasing and > 0");
            }
            prev = t;
        }
    }
}

PsiFn make_panjer_psi(const ShotNoiseSpec& loss, double threshold, double grid_step) {
    if (loss.growth != 0.0) {
        throw std::invalid_argument("Panjer Psi needs a compound-Poisson loss (growth = 0)");
    }
    const double rate = loss.claim_rate.constant_rate();
    const SeverityModel severity = loss.severity;
    return [rate, severity, threshold, grid_step](double t) {
        return panjer_cdf(rate, severity, t, threshold, grid_step);
    };
}

PsiFn make_mc_psi(const ShotNoiseSpec& loss, double threshold, double horizon,
                  std::size_t n_paths, std::uint64_t seed, std::size_t grid_points) {
    loss.validate();
    if (!(horizon > 0.0)) throw std::invalid_argument("Psi horizon must be > 0");
    if (grid_points < 2) throw std::invalid_argument("Psi grid needs at least 2 points");
    // Common random numbers: the same paths are reused at every grid time,
    // so the estimate is non-increasing in t by construction.
    auto values = std::make_shared<std::vector<double>>(grid_points, 0.0);
    const double dt = horizon / static_cast<double>(grid_points - 1);
    std::vector<double> count(grid_points, 0.0);
    for (std::size_t i = 0; i < n_paths; ++i) {
        auto rng = substream(seed, stream::psi, i);
        const LossPath path = simulate_loss_path(loss, horizon, rng);
        for (std::size_t k = 0; k < grid_points; ++k) {
            if (loss_at(path, loss.growth, std::min(k * dt, horizon)) <= threshold) count[k] += 1.0;
        }
    }
    for (std::size_t k = 0; k < grid_points; ++k) {
        (*values)[k] = count[k] / static_cast<double>(n_paths);
    }
    return [values, dt, horizon, grid_points](double t) {
        if (!(t >= 0.0) || t > horizon * (1.0 + 1e-12)) {
            throw std::invalid_argument("Psi evaluated outside its grid horizon");
        }
        const double x = std::min(t, horizon) / dt;
        const auto k = std::min(static_cast<std::size_t>(x), grid_points - 2);
        const double w = x - static_cast<double>(k);
        return (1.0 - w) * (*values)[k] + w * (*values)[k + 1];
    };
}

double azema_z(std::span<const double> covering_times, const PsiFn& psi, double t,
               double mono_tol) {
    if (!(t >= 0.0)) throw std::invalid_argument("azema_z needs t >= 0");
    double z = 1.0;
    double psi_prev = psi(0.0);
    double prev_time = 0.0;
    for (double theta : covering_times) {
        if (!(theta > prev_time)) {
            throw std::invalid_argument("covering times must be strictly increasing");
        }
        if (theta > t) break;
        const double psi_cur = psi(theta);
        if (psi_cur > psi_prev + mono_tol) {
            throw std::invalid_argument("Psi must be non-increasing in t");
        }
        z -= psi_prev - psi_cur;
        psi_prev = psi_cur;
        prev_time = theta;
    }
    return z;
}

namespace {

std::vector<double> covering_times_on(const Model1Spec& spec, double horizon,
                                      std::mt19937_64& rng) {
    if (const auto* pois = std::get_if<PoissonCovering>(&spec.covering)) {
        return simulate_arrival_times(ArrivalIntensity::constant(pois->rate), horizon, rng);
    }
    const auto& det = std::get<DeterministicCovering>(spec.covering);
    std::vector<double> times;
    for (double t : det.times) {
        if (t <= horizon) times.push_back(t);
    }
    return times;
}

double first_crossing(const Model1Spec& spec, std::span<const double> covering,
                      const LossPath& loss_path) {
    for (double theta : covering) {
        if (loss_at(loss_path, spec.loss.growth, theta) > spec.contract.threshold) return theta;
    }
    return beyond_horizon;
}

// Piecewise-linear cache of Psi with prefix integrals of psi(u) and of
// e^{-r u} psi(u), so per-path segment integrals cost O(1).
class PsiGrid {
public:
    PsiGrid(const PsiFn& psi, double horizon, double discount_rate, std::size_t nodes = 513)
        : horizon_(horizon), rate_(discount_rate), dt_(horizon / static_cast<double>(nodes - 1)) {
        v_.resize(nodes);
        for (std::size_t k = 0; k < nodes; ++k) v_[k] = psi(std::min(k * dt_, horizon));
        prefix_.assign(nodes, 0.0);
        dprefix_.assign(nodes, 0.0);
        for (std::size_t k = 1; k < nodes; ++k) {
            const double a = (k - 1) * dt_;
            prefix_[k] = prefix_[k - 1] + 0.5 * (v_[k - 1] + v_[k]) * dt_;
            dprefix_[k] = dprefix_[k - 1] + cell_discounted(k - 1, a, a + dt_);
        }
    }

    double value(double t) const {
        const double x = std::min(t, horizon_) / dt_;
        const auto k = std::min(static_cast<std::size_t>(x), v_.size() - 2);
        const double w = x - static_cast<double>(k);
        return (1.0 - w) * v_[k] + w * v_[k + 1];
    }

    double integral(double a, double b) const {  // int_a^b psi(u) du
        return prefix_at(b) - prefix_at(a);
    }

    double discounted_integral(double a, double b) const {  // int_a^b e^{-r u} psi(u) du
        return dprefix_at(b) - dprefix_at(a);
    }

private:
    std::size_t cell(double t) const {
        return std::min(static_cast<std::size_t>(t / dt_), v_.size() - 2);
    }

    double prefix_at(double t) const {
        const std::size_t k = cell(t);
        const double a = k * dt_;
        return prefix_[k] + 0.5 * (v_[k] + value(t)) * (t - a);
    }

    double dprefix_at(double t) const {
        const std::size_t k = cell(t);
        return dprefix_[k] + cell_discounted(k, k * dt_, t);
    }

    // int_x^y e^{-r u) (c + m (u - t_k)) du over part of cell k
    double cell_discounted(std::size_t k, double x, double y) const {
        if (y <= x) return 0.0;
        const double t0 = k * dt_;
        const double c = v_[k];
        const double m = (v_[k + 1] - v_[k]) / dt_;
        if (rate_ == 0.0) {
            const double ux = x - t0, uy = y - t0;
            return c * (y - x) + 0.5 * m * (uy * uy - ux * ux);
        }
        auto anti = [&](double u) {
            // antiderivative of e^{-r u}(c + m (u - t0))
            return -std::exp(-rate_ * u) * ((c + m * (u - t0)) / rate_ + m / (rate_ * rate_));
        };
        return anti(y) - anti(x);
    }

    double horizon_;
    double rate_;
    double dt_;
    std::vector<double> v_;
    std::vector<double> prefix_;
    std::vector<double> dprefix_;
};

int auto_truncation_terms(double poisson_mean, double tail_tol) {
    // smallest m with P(N >= m) < tail_tol
    double term = std::exp(-poisson_mean);
    double cdf = term;
    int m = 1;
    while (1.0 - cdf >= tail_tol && m < 10000) {
        term *= poisson_mean / m;
        cdf += term;
        ++m;
    }
    return m;
}

}  // namespace

Estimate price_inaccessible(const Model1Spec& spec, const PsiFn& psi, std::size_t n_paths,
                            std::uint64_t seed, int max_terms, int threads) {
    spec.validate();
    const auto* pois = std::get_if<PoissonCovering>(&spec.covering);
    if (pois == nullptr) {
        throw std::invalid_argument("price_inaccessible needs Poisson covering times");
    }
    if (n_paths < 1000) throw std::invalid_argument("price_inaccessible needs n_paths >= 1000");
    const double maturity = spec.contract.maturity;
    const double r = spec.short_rate;
    const double rate = pois->rate;
    const PsiGrid grid(psi, maturity, r);

    int terms = max_terms;
    if (terms <= 0) {
        terms = auto_truncation_terms(rate * maturity, 1e-6);
    }

    std::vector<double> value(n_paths);
    parallel_chunks(n_paths, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            auto rng = substream(seed, stream::arrivals, p);
            const std::vector<double> thetas = simulate_arrival_times(
                ArrivalIntensity::constant(rate), maturity, rng);
            double principal_term = 0.0;  // sum_i int (Psi(theta_{i-1}) - Psi(s)) lambda^i ds
            double recovery_term = 0.0;   // same with e^{-r u} weight
            double seg_start = 0.0;
            for (int i = 1; i <= terms && seg_start < maturity; ++i) {
                const double seg_end =
                    static_cast<std::size_t>(i) <= thetas.size() ? thetas[i - 1] : maturity;
                const double psi_prev = grid.value(seg_start);
                principal_term +=
                    rate * (psi_prev * (seg_end - seg_start) - grid.integral(seg_start, seg_end));
                const double disc_len = r == 0.0 ? (seg_end - seg_start)
                                                 : (std::exp(-r * seg_start) - std::exp(-r * seg_end)) / r;
                recovery_term +=
                    rate * (psi_prev * disc_len - grid.discounted_integral(seg_start, seg_end));
                seg_start = seg_end;
            }
            value[p] = spec.contract.principal *
                       (std::exp(-r * maturity) * (1.0 - principal_term) +
                        spec.contract.recovery * recovery_term);
        }
    });
    return mean_and_se(value);
}

Estimate price_single_event(const Model1Spec& spec, const PsiFn& psi, std::size_t n_paths,
                            std::uint64_t seed, int threads) {
    spec.validate();
    const auto* pois = std::get_if<PoissonCovering>(&spec.covering);
    if (pois == nullptr) {
        throw std::invalid_argument("price_single_event needs Poisson covering times");
    }
    if (n_paths < 1000) throw std::invalid_argument("price_single_event needs n_paths >= 1000");
    const double maturity = spec.contract.maturity;
    const double r = spec.short_rate;
    const double rate = pois->rate;
    const PsiGrid grid(psi, maturity, r);

    std::vector<double> value(n_paths);
    parallel_chunks(n_paths, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            auto rng = substream(seed, stream::arrivals, p);
            std::exponential_distribution<double> gap(rate);
            const double first = rate > 0.0 ? gap(rng) : beyond_horizon;
            const double b = std::min(first, maturity);
            const double principal_term = rate * (b - grid.integral(0.0, b));
            const double disc_len = r == 0.0 ? b : -std::expm1(-r * b) / r;
            const double recovery_term = rate * (disc_len - grid.discounted_integral(0.0, b));
            value[p] = spec.contract.principal *
                       (std::exp(-r * maturity) * (1.0 - principal_term) +
                        spec.contract.recovery * recovery_term);
        }
    });
    return mean_and_se(value);
}

double simulate_trigger(const Model1Spec& spec, double horizon, std::mt19937_64& rng) {
    spec.validate();
    const std::vector<double> covering = covering_times_on(spec, horizon, rng);
    const LossPath loss_path = simulate_loss_path(spec.loss, horizon, rng);
    return first_crossing(spec, covering, loss_path);
}

Estimate price_predictable(const Model1Spec& spec, const PsiFn& psi) {
    spec.validate();
    const auto* det = std::get_if<DeterministicCovering>(&spec.covering);
    if (det == nullptr) {
        throw std::invalid_argument("price_predictable needs deterministic covering times");
    }
    if (spec.short_rate != 0.0) {
        throw std::invalid_argument(
            "the predictable-case closed form is stated for zero interest rate; use mc_price");
    }
    double last = 0.0;
    for (double t : det->times) {
        if (t <= spec.contract.maturity) last = t;
    }
    const double scale = spec.contract.principal * (1.0 - spec.contract.recovery);
    return {scale * psi(last), 0.0};
}

Estimate price_predictable_mc_psi(const Model1Spec& spec, std::size_t n_paths, std::uint64_t seed,
                                  int threads) {
    spec.validate();
    const auto* det = std::get_if<DeterministicCovering>(&spec.covering);
    if (det == nullptr) {
        throw std::invalid_argument("price_predictable needs deterministic covering times");
    }
    if (spec.short_rate != 0.0) {
        throw std::invalid_argument(
            "the predictable-case closed form is stated for zero interest rate; use mc_price");
    }
    double last = 0.0;
    for (double t : det->times) {
        if (t <= spec.contract.maturity) last = t;
    }
    const double scale = spec.contract.principal * (1.0 - spec.contract.recovery);
    if (last == 0.0) return {scale, 0.0};
    const Estimate psi_hat =
        aggregate_cdf_mc(spec.loss, last, spec.contract.threshold, n_paths, seed, threads);
    return {scale * psi_hat.value, scale * psi_hat.se};
}

Estimate mc_price(const Model1Spec& spec, std::size_t n_paths, std::uint64_t seed, int threads) {
    spec.validate();
    if (n_paths < 1000) throw std::invalid_argument("mc_price needs n_paths >= 1000");
    const double maturity = spec.contract.maturity;
    const double r = spec.short_rate;
    std::vector<double> payoff(n_paths);
    parallel_chunks(n_paths, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            auto rng = substream(seed, stream::arrivals, p);
            const std::vector<double> covering = covering_times_on(spec, maturity, rng);
            const LossPath loss_path = simulate_loss_path(spec.loss, maturity, rng);
            const double tau = first_crossing(spec, covering, loss_path);
            payoff[p] = tau > maturity
                            ? spec.contract.principal * std::exp(-r * maturity)
                            : spec.contract.recovery * spec.contract.principal * std::exp(-r * tau);
        }
    });
    return mean_and_se(payoff);
}

}  // namespace model1
}  // namespace catbond
