#pragma once

// Direct quadrature of the interaction-kernel Fourier integrals, split at the
// logarithmic singularities. Serves as the independent column of the `kernel`
// CLI output and as the reference the closed forms are checked against.

#include "geovlasov/geometry.hpp"
#include "geovlasov/quadrature.hpp"

#include <cmath>

namespace geovlasov {

namespace detail {

/// Quadrature nodes can round exactly onto the kernel poles; the integrand is
/// set to zero there (the skipped measure is ~1e-15 with a log factor).
inline double kernel_W_guarded(double x, Curvature c)
{
    const double y = std::abs(std::remainder(x, 2.0 * pi));
    if (y < 1e-15 || (c == Curvature::sphere && std::abs(y - pi) < 1e-15))
        return 0.0;
    return kernel_W(x, c);
}

} // namespace detail

/// int_0^{2pi} W(x) e^{-ikx} dx by tanh-sinh on (0, pi) and (pi, 2pi);
/// the sine part vanishes by W(2pi - x) = W(x), leaving 2 int_0^pi W cos(kx).
inline double kernel_fourier_circle_quadrature(long long k, double quad_tol = 1e-12)
{
    const auto f = [k](double x) {
        return detail::kernel_W_guarded(x, Curvature::sphere) * std::cos(double(k) * x);
    };
    // split once more at pi/2 so each piece has one singular endpoint
    const double left = integrate_endpoint_singular(f, 0.0, pi / 2.0, quad_tol);
    const double right = integrate_endpoint_singular(f, pi / 2.0, pi, quad_tol);
    return 2.0 * (left + right);
}

/// int_R W(x) e^{-i xi x} dx truncated at |x| = xmax, where
/// W(x) <= e^{-|x|}/pi leaves a tail below e^{-xmax}. Log singularity at 0
/// handled by tanh-sinh; the smooth oscillatory remainder by Gauss-Kronrod.
inline double kernel_fourier_line_quadrature(double xi, double quad_tol = 1e-12,
                                             double xmax = 40.0)
{
    const auto f = [xi](double x) {
        return detail::kernel_W_guarded(x, Curvature::hyperbolic) * std::cos(xi * x);
    };
    const double inner = integrate_endpoint_singular(f, 0.0, 1.0, quad_tol);
    const double outer = integrate(f, 1.0, xmax, quad_tol);
    return 2.0 * (inner + outer);
}

/// L1 mass of the kernel, int |W|; on the line this is the constant C_w.
inline double kernel_l1_norm(Curvature c, double quad_tol = 1e-12)
{
    if (c == Curvature::sphere) {
        const auto f = [](double x) { return std::abs(detail::kernel_W_guarded(x, Curvature::sphere)); };
        return 2.0 * (integrate_endpoint_singular(f, 0.0, pi / 2.0, quad_tol)
                      + integrate_endpoint_singular(f, pi / 2.0, pi, quad_tol));
    }
    const auto f = [](double x) { return detail::kernel_W_guarded(x, Curvature::hyperbolic); };
    return 2.0 * (integrate_endpoint_singular(f, 0.0, 1.0, quad_tol)
                  + integrate(f, 1.0, 40.0, quad_tol));
}

} // namespace geovlasov
