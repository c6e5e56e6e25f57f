#include "catbond/severity.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "catbond/quadrature.hpp"

namespace catbond {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite and > 0");
    }
}

void require_nonnegative_arg(double x, const char* what) {
    if (!(x >= 0.0)) throw std::invalid_argument(std::string(what) + " must be >= 0");
}

}  // namespace

double lambert_w(double x) {
    require_nonnegative_arg(x, "lambert_w argument");
    if (x == 0.0) return 0.0;
    double w = std::log1p(x);
    for (int it = 0; it < 50; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (std::abs(f) <= 1e-14 * std::max(1.0, x)) return w;
        // Halley step for f(w) = w e^w - x
        const double fp = ew * (1.0 + w);
        const double step = f / (fp - f * (2.0 + w) / (2.0 * (1.0 + w)));
        w -= step;
    }
    return w;
}

SeverityModel SeverityModel::exponential(double rate) {
    require_positive(rate, "exponential rate");
    return SeverityModel{ExponentialSeverity{rate}};
}

SeverityModel SeverityModel::lognormal(double mu, double sigma) {
    if (!std::isfinite(mu)) throw std::invalid_argument("lognormal mu must be finite");
    require_positive(sigma, "lognormal sigma");
    return SeverityModel{LogNormalSeverity{mu, sigma}};
}

SeverityModel SeverityModel::pareto(double shape, double scale) {
    require_positive(shape, "pareto shape");
    require_positive(scale, "pareto scale");
    return SeverityModel{ParetoSeverity{shape, scale}};
}

double SeverityModel::cdf(double x) const {
    require_nonnegative_arg(x, "cdf argument");
    return visit([x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExponentialSeverity>) {
            return -std::expm1(-d.rate * x);
        } else if constexpr (std::is_same_v<T, LogNormalSeverity>) {
            if (x == 0.0) return 0.0;
            return normal_cdf((std::log(x) - d.mu) / d.sigma);
        } else {
            return -std::expm1(d.shape * std::log1p(-x / (d.scale + x)));
        }
    });
}

double SeverityModel::density(double x) const {
    require_nonnegative_arg(x, "density argument");
    return visit([x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExponentialSeverity>) {
            return d.rate * std::exp(-d.rate * x);
        } else if constexpr (std::is_same_v<T, LogNormalSeverity>) {
            if (x == 0.0) return 0.0;
            const double z = (std::log(x) - d.mu) / d.sigma;
            return std::exp(-0.5 * z * z) / (x * d.sigma * std::sqrt(2.0 * M_PI));
        } else {
            return d.shape / d.scale * std::pow(d.scale / (d.scale + x), d.shape + 1.0);
        }
    });
}

double SeverityModel::mean() const {
    return visit([](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExponentialSeverity>) {
            return 1.0 / d.rate;
        } else if constexpr (std::is_same_v<T, LogNormalSeverity>) {
            return std::exp(d.mu + 0.5 * d.sigma * d.sigma);
        } else {
            if (d.shape <= 1.0) return std::numeric_limits<double>::infinity();
            return d.scale / (d.shape - 1.0);
        }
    });
}

bool SeverityModel::has_finite_second_moment() const {
    return visit([](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ParetoSeverity>) {
            return d.shape > 2.0;
        } else {
            (void)d;
            return true;
        }
    });
}

double SeverityModel::sample(std::mt19937_64& rng) const {
    return visit([&rng](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExponentialSeverity>) {
            std::exponential_distribution<double> dist(d.rate);
            return dist(rng);
        } else if constexpr (std::is_same_v<T, LogNormalSeverity>) {
            std::lognormal_distribution<double> dist(d.mu, d.sigma);
            return dist(rng);
        } else {
            // inverse CDF: b((1-u)^(-1/a) - 1)
            std::uniform_real_distribution<double> dist(0.0, 1.0);
            const double u = dist(rng);
            return d.scale * std::expm1(-std::log1p(-u) / d.shape);
        }
    });
}

double SeverityModel::laplace(double u) const {
    require_nonnegative_arg(u, "laplace argument");
    return visit([u](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExponentialSeverity>) {
            return d.rate / (d.rate + u);
        } else if constexpr (std::is_same_v<T, LogNormalSeverity>) {
            if (u == 0.0) return 1.0;
            // Saddlepoint closed form: with w = W(u sigma^2 e^mu),
            //   phi(u) ~= exp(-w^2/(2 sigma^2) - w/sigma^2) / sqrt(1+w).
            const double s2 = d.sigma * d.sigma;
            const double w = lambert_w(u * s2 * std::exp(d.mu));
            return std::exp(-w * w / (2.0 * s2) - w / s2) / std::sqrt(1.0 + w);
        } else {
            if (u == 0.0) return 1.0;
            // substitute y = (b/(b+x))^1: phi = int_0^1 a y^(a-1) exp(-u b (1/y - 1)) dy
            const double a = d.shape;
            const double b = d.scale;
            auto integrand = [a, b, u](double y) {
                if (y <= 0.0) return 0.0;
                const double expo = u * b * (1.0 / y - 1.0);
                if (expo > 700.0) return 0.0;
                return a * std::pow(y, a - 1.0) * std::exp(-expo);
            };
            return integrate(integrand, 0.0, 1.0, 1e-10);
        }
    });
}

double SeverityModel::laplace_quadrature(double u, double abs_tol) const {
    require_nonnegative_arg(u, "laplace argument");
    return visit([u, abs_tol](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExponentialSeverity>) {
            // truncation tail beta/(beta+u) e^{-(beta+u)X} < 1e-17 at X = 40/(beta+u)
            const double upper = 40.0 / (d.rate + u);
            auto integrand = [&d, u](double x) { return std::exp(-u * x) * d.rate * std::exp(-d.rate * x); };
            return integrate(integrand, 0.0, upper, abs_tol);
        } else if constexpr (std::is_same_v<T, LogNormalSeverity>) {
            // log-space substitution x = exp(mu + sigma s) tames the tail
            auto integrand = [&d, u](double s) {
                const double x = std::exp(d.mu + d.sigma * s);
                const double expo = u * x + 0.5 * s * s;
                if (expo > 700.0) return 0.0;
                return std::exp(-expo) / std::sqrt(2.0 * M_PI);
            };
            return integrate(integrand, -38.0, 38.0, abs_tol);
        } else {
            // quantile form: phi = int_0^1 exp(-u Q(1-y)) dy, Q(1-y) = b (y^(-1/a) - 1)
            const double a = d.shape;
            const double b = d.scale;
            auto integrand = [a, b, u](double y) {
                if (y <= 0.0) return 0.0;
                const double expo = u * b * std::expm1(-std::log(y) / a);
                if (expo > 700.0) return 0.0;
                return std::exp(-expo);
            };
            return integrate(integrand, 0.0, 1.0, abs_tol);
        }
    });
}

std::string SeverityModel::describe() const {
    std::ostringstream os;
    visit([&os](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExponentialSeverity>) {
            os << "exponential(" << d.rate << ")";
        } else if constexpr (std::is_same_v<T, LogNormalSeverity>) {
            os << "lognormal(" << d.mu << ", " << d.sigma << ")";
        } else {
            os << "pareto(" << d.shape << ", " << d.scale << ")";
        }
    });
    return os.str();
}

}  // namespace catbond
