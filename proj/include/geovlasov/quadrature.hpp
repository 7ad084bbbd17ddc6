#pragma once

// Quadrature utilities: adaptive Gauss-Kronrod and tanh-sinh rules (Boost.Math)
// plus Gauss-Legendre node generation for the surface-density grids.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace geovlasov {

/// Adaptive Gauss-Kronrod (15-point) integration of a smooth integrand.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12, unsigned max_depth = 14)
{
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, max_depth, tol);
}

/// Gauss-Kronrod with a convergence check: throws when the reported error
/// estimate stays above the requested tolerance.
template <class F>
double integrate_checked(F&& f, double a, double b, double tol = 1e-9, unsigned max_depth = 12,
                         const char* who = "integrate_checked")
{
    double err = 0.0;
    const double val = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, max_depth, tol, &err);
    if (err > 100.0 * tol * std::max(1.0, std::abs(val)))
        throw std::runtime_error(std::string(who) + ": quadrature did not converge");
    return val;
}

/// tanh-sinh integration; handles integrable endpoint singularities (log, etc).
template <class F>
double integrate_endpoint_singular(F&& f, double a, double b, double tol = 1e-12)
{
    boost::math::quadrature::tanh_sinh<double> rule;
    return rule.integrate(std::forward<F>(f), a, b, tol);
}

struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1] by Newton iteration on the Legendre recurrence.
inline GaussLegendreRule gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: order must be >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int mid = (n + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        double x = std::cos(std::numbers::pi * (double(i) + 0.75) / (double(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

/// Gauss-Legendre rule mapped to [a, b].
inline GaussLegendreRule gauss_legendre(int n, double a, double b)
{
    GaussLegendreRule rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

} // namespace geovlasov
