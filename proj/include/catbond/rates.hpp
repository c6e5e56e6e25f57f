#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "catbond/rng.hpp"

namespace catbond {

// CIR short rate: dr = mean_reversion (long_run_mean - r) dt + volatility sqrt(r) dW.
struct CirParams {
    double initial_rate;   // r_0 >= 0
    double mean_reversion; // gamma_r > 0, 1/year
    double long_run_mean;  // theta > 0, 1/year
    double volatility;     // sigma > 0, 1/sqrt(year)

    void validate() const;
    double stiffness() const;  // h = sqrt(gamma_r^2 + 2 sigma^2)
};

// Closed-form discount bond Q_t(T) = exp(A_t(T) - B_t(T) r_t).
double bond_price(const CirParams& p, double r_t, double t, double maturity);

// Exact transition sampler over a fixed step: the conditional law is a
// scaled noncentral chi-square. For dof > 1 the (Z + sqrt(nc))^2 + chi2_{dof-1}
// decomposition is used, which also supports antithetic pairs by mirroring Z;
// otherwise the Poisson-mixture representation is used.
class CirTransition {
public:
    CirTransition(const CirParams& p, double dt);
    double advance(double r, std::mt19937_64& rng) const;
    // Advances two chains with mirrored Gaussian component (dof > 1) or
    // independently (dof <= 1). Both marginals are exact.
    void advance_pair(double& r_a, double& r_b, std::mt19937_64& rng) const;

private:
    double dof_;
    double scale_;  // c
    double decay_;  // exp(-gamma dt)
};

// Rates on the given grid (grid[0] == 0 required), exact transitions between
// grid points.
std::vector<double> simulate_rate_path(const CirParams& p, std::span<const double> grid,
                                       std::mt19937_64& rng);

// Monte Carlo E[exp(-int_0^T r ds)] with trapezoidal time integration;
// oracle for bond_price.
Estimate mc_discount(const CirParams& p, double maturity, std::size_t n_paths, int steps_per_year,
                     std::uint64_t seed, bool antithetic = false, int threads = 0);

}  // namespace catbond
