#pragma once

// Test-only oracles, independent of the library code paths they validate.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace catbond::testing {

// Compound Poisson with exponential severities: P(S <= x) by the Erlang
// series sum_n P(N = n) P(Gamma(n, rate) <= x), truncated when the Poisson
// tail falls below 1e-14.
inline double compound_poisson_exponential_cdf(double expected_claims, double rate, double x) {
    double poisson_term = std::exp(-expected_claims);
    double total = poisson_term;  // n = 0 contributes 1 * P(N=0)
    double poisson_cdf = poisson_term;
    for (int n = 1; n < 10000 && 1.0 - poisson_cdf > 1e-14; ++n) {
        poisson_term *= expected_claims / n;
        poisson_cdf += poisson_term;
        // Erlang(n, rate) CDF = 1 - e^{-rate x} sum_{k<n} (rate x)^k / k!
        double gamma_term = std::exp(-rate * x);
        double gamma_tail = gamma_term;
        for (int k = 1; k < n; ++k) {
            gamma_term *= rate * x / k;
            gamma_tail += gamma_term;
        }
        total += poisson_term * (1.0 - gamma_tail);
    }
    return total;
}

// sigma -> 0 limit of the CIR discount bond: exp of minus the deterministic
// mean-reverting integral.
inline double deterministic_cir_discount(double r0, double mean_reversion, double long_run_mean,
                                         double maturity) {
    const double integral = long_run_mean * maturity +
                            (r0 - long_run_mean) * (1.0 - std::exp(-mean_reversion * maturity)) /
                                mean_reversion;
    return std::exp(-integral);
}

// Two-sided Kolmogorov-Smirnov statistic against a model CDF.
template <class Cdf>
double ks_statistic(std::vector<double> draws, Cdf&& cdf) {
    std::sort(draws.begin(), draws.end());
    const double n = static_cast<double>(draws.size());
    double d = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double f = cdf(draws[i]);
        d = std::max(d, std::max(f - i / n, (i + 1) / n - f));
    }
    return d;
}

// Asymptotic two-sided KS critical value at level alpha.
inline double ks_critical(std::size_t n, double alpha) {
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

}  // namespace catbond::testing
