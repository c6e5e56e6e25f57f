#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "catbond/contract.hpp"
#include "catbond/loss.hpp"
#include "catbond/rng.hpp"

namespace catbond {
namespace model1 {

inline constexpr double beyond_horizon = std::numeric_limits<double>::infinity();

// Covering stopping times: trigger candidates. Poisson jump times give a
// totally inaccessible trigger; fixed times give a predictable one.
struct PoissonCovering {
    double rate;
};
struct DeterministicCovering {
    std::vector<double> times;  // strictly increasing, > 0
};
using CoveringTimes = std::variant<PoissonCovering, DeterministicCovering>;

// Trigger at the first covering time theta_i with L_{theta_{i-1}} <= D < L_{theta_i}.
// The loss process is independent of the covering times.
struct Model1Spec {
    CoveringTimes covering = PoissonCovering{1.0};
    ShotNoiseSpec loss;
    CatBondContract contract;
    double short_rate = 0.0;  // constant r >= 0

    void validate() const;
};

// Psi(t) = P(L_t <= D) for the contract threshold, supplied as a callable.
using PsiFn = std::function<double(double)>;

// Deterministic Psi from the Panjer recursion (growth = 0 losses only).
PsiFn make_panjer_psi(const ShotNoiseSpec& loss, double threshold, double grid_step);

// Monte Carlo Psi on a fixed time grid with common random numbers across
// grid points (hence non-increasing in t by construction), linearly
// interpolated in between.
PsiFn make_mc_psi(const ShotNoiseSpec& loss, double threshold, double horizon,
                  std::size_t n_paths, std::uint64_t seed, std::size_t grid_points = 129);

// Azema supermartingale Z_t = 1 - sum_{theta_i <= t} (Psi(theta_{i-1}) - Psi(theta_i)).
// Rejects Psi increments that increase in t beyond mono_tol.
double azema_z(std::span<const double> covering_times, const PsiFn& psi, double t,
               double mono_tol = 1e-9);

// Simulates covering times and an independent loss path; returns the first
// covering time (<= horizon) at which the loss exceeds the threshold, or
// beyond_horizon.
double simulate_trigger(const Model1Spec& spec, double horizon, std::mt19937_64& rng);

// Price at time 0 for Poisson covering times: MC over covering paths of the
// dual-projection integrals, Psi supplied deterministically. max_terms == 0
// truncates the term sum automatically where the Poisson tail P(theta_i <= T)
// drops below 1e-6; max_terms == 1 reproduces the first-event special case.
Estimate price_inaccessible(const Model1Spec& spec, const PsiFn& psi, std::size_t n_paths,
                            std::uint64_t seed, int max_terms = 0, int threads = 0);

// Direct first-event-only route (independent code path used to validate the
// truncated general estimator): P e^{-rT} (1 - E int_0^{T ^ theta_1} (1 - Psi(s)) rate ds),
// with recovery handled as in the general formula.
Estimate price_single_event(const Model1Spec& spec, const PsiFn& psi, std::size_t n_paths,
                            std::uint64_t seed, int threads = 0);

// Zero-rate predictable-case closed form P (1 - recovery) Psi(theta_m) with
// theta_m the last deterministic covering time <= maturity. Rejects nonzero
// short_rate (use mc_price instead).
Estimate price_predictable(const Model1Spec& spec, const PsiFn& psi);
Estimate price_predictable_mc_psi(const Model1Spec& spec, std::size_t n_paths, std::uint64_t seed,
                                  int threads = 0);

// Discounted-payoff oracle E[P e^{-rT} 1{tau>T} + recovery P e^{-r tau} 1{tau<=T}].
Estimate mc_price(const Model1Spec& spec, std::size_t n_paths, std::uint64_t seed,
                  int threads = 0);

}  // namespace model1
}  // namespace catbond
