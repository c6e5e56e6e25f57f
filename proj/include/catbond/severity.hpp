#pragma once

#include <random>
#include <string>
#include <variant>

namespace catbond {

// Principal branch of the Lambert W function on [0, inf): the w >= 0 with
// w*exp(w) = x. Halley iteration from w0 = log1p(x); residual below
// 1e-14 * max(1, x). Negative arguments are rejected.
double lambert_w(double x);

struct ExponentialSeverity {
    double rate;  // beta > 0, mean 1/beta
};

struct LogNormalSeverity {
    double mu;     // log-scale location
    double sigma;  // log-scale dispersion > 0
};

// Lomax form: survival (b/(b+x))^a, shape a > 0, scale b > 0.
struct ParetoSeverity {
    double shape;
    double scale;
};

// Catastrophe loss (shot) size distribution. All mass on [0, inf).
class SeverityModel {
public:
    static SeverityModel exponential(double rate);
    static SeverityModel lognormal(double mu, double sigma);
    static SeverityModel pareto(double shape, double scale);

    double cdf(double x) const;      // rejects x < 0
    double density(double x) const;  // rejects x < 0
    double mean() const;             // +inf for Pareto with shape <= 1
    bool has_finite_second_moment() const;

    double sample(std::mt19937_64& rng) const;

    // Laplace transform phi(u) = E[exp(-u Y)], u >= 0.
    //   Exponential: exact rate/(rate+u).
    //   LogNormal:   Lambert-W closed approximation with argument
    //                u*sigma^2*exp(mu) (saddlepoint form).
    //   Pareto:      adaptive quadrature to abs_tol 1e-10.
    double laplace(double u) const;

    // Independent quadrature route for phi(u), used to validate laplace().
    double laplace_quadrature(double u, double abs_tol = 1e-10) const;

    std::string describe() const;  // e.g. "lognormal(6.387, 0.153)"

    template <class Visitor>
    decltype(auto) visit(Visitor&& v) const {
        return std::visit(std::forward<Visitor>(v), dist_);
    }

private:
    explicit SeverityModel(std::variant<ExponentialSeverity, LogNormalSeverity, ParetoSeverity> d)
        : dist_(d) {}
    std::variant<ExponentialSeverity, LogNormalSeverity, ParetoSeverity> dist_;
};

}  // namespace catbond
