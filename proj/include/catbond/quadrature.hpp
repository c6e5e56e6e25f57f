#pragma once

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace catbond {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // conservative absolute error estimate
    int intervals = 0;
    bool converged = false;
};

struct QuadratureError : std::runtime_error {
    double achieved_error;
    explicit QuadratureError(double achieved)
        : std::runtime_error("adaptive quadrature failed to reach tolerance, achieved error estimate " +
                             std::to_string(achieved)),
          achieved_error(achieved) {}
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [a,b]. Returns the K15 value and |K15 - G7|
// as the error estimate.
template <class F>
void gk15(F&& f, double a, double b, double& value, double& error) {
    // QUADPACK dqk15 abscissae (positive half) and weights.
    static constexpr double xgk[8] = {
        0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
        0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
    static constexpr double wgk[8] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
        0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
    static constexpr double wg[4] = {
        0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resk = wgk[7] * fc;
    double resg = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * xgk[i];
        const double fsum = f(center - dx) + f(center + dx);
        resk += wgk[i] * fsum;
        if (i % 2 == 1) resg += wg[i / 2] * fsum;
    }
    value = resk * half;
    error = std::abs((resk - resg) * half);
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration: repeatedly bisects the
// segment with the largest error estimate until the summed estimate is
// below abs_tol or the interval budget runs out. Starts from a coarse
// uniform subdivision so narrow features are not missed by the first rule.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-10,
                                    int max_intervals = 4096) {
    QuadratureResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }

    constexpr int initial_segments = 8;
    std::priority_queue<detail::Segment> heap;
    double total_error = 0.0;
    int n = 0;
    for (int k = 0; k < initial_segments; ++k) {
        detail::Segment s{a + (b - a) * k / initial_segments,
                          a + (b - a) * (k + 1) / initial_segments, 0.0, 0.0};
        if (!(s.b > s.a) && !(s.b < s.a)) continue;
        detail::gk15(f, s.a, s.b, s.value, s.error);
        total_error += s.error;
        heap.push(s);
        ++n;
    }

    while (total_error > abs_tol && n < max_intervals) {
        detail::Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.error == 0.0 || mid <= worst.a || mid >= worst.b) break;  // cannot refine further
        heap.pop();
        detail::Segment left{worst.a, mid, 0.0, 0.0};
        detail::Segment right{mid, worst.b, 0.0, 0.0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++n;
    }

    double sum = 0.0;
    double err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    res.value = sum;
    res.error = err;
    res.intervals = n;
    res.converged = err <= abs_tol;
    return res;
}

// Convenience wrapper that throws QuadratureError on non-convergence.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10, int max_intervals = 4096) {
    const QuadratureResult r = integrate_adaptive(f, a, b, abs_tol, max_intervals);
    if (!r.converged) throw QuadratureError(r.error);
    return r.value;
}

}  // namespace catbond
