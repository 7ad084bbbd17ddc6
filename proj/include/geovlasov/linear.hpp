#pragma once

// Linearized dynamics around homogeneous states f0(v): the Volterra equation
// satisfied by each spatial Fourier mode of the density, its Laplace-transformed
// kernel, Plemelj principal values, Penrose stability verdicts, decay-rate
// fitting, and the weighted spectral norm used on the hyperbolic side.
//
// Mode equation (both manifolds, same Fourier conventions as geometry.hpp):
//     rho^(t, k) = a(t) + int_0^t K(t - tau) rho^(tau, k) dtau
// with kernel
//     circle:  K(t, k)  = |k| t f0^(k t)          (k odd; 0 for k even)
//     line:    K(t, xi) = (xi t / 2) tanh(xi pi/2) f0^(xi t)
// and forcing a(t) = h0^^(mode, mode t), the double transform of the initial
// perturbation evaluated on the free-streaming ray.

#include "geovlasov/equilibrium.hpp"
#include "geovlasov/geometry.hpp"
#include "geovlasov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace geovlasov {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Volterra kernel and forcing

inline cplx volterra_kernel_circle(double t, long long k, const EquilibriumProfile& f0)
{
    if (t < 0.0)
        throw std::invalid_argument("volterra_kernel: requires t >= 0");
    if (k % 2 == 0)
        return {0.0, 0.0};
    const double ak = double(k < 0 ? -k : k);
    return ak * t * f0.fourier(double(k) * t);
}

inline cplx volterra_kernel_line(double t, double xi, const EquilibriumProfile& f0)
{
    if (t < 0.0)
        throw std::invalid_argument("volterra_kernel: requires t >= 0");
    return 0.5 * xi * t * std::tanh(0.5 * pi * xi) * f0.fourier(xi * t);
}

/// Dispatcher on the manifold; circle modes must be integers.
inline cplx volterra_kernel(double t, double mode, const EquilibriumProfile& f0, Curvature c)
{
    if (c == Curvature::sphere) {
        const long long k = std::llround(mode);
        if (std::abs(mode - double(k)) > 1e-9)
            throw std::invalid_argument("volterra_kernel: circle mode must be an integer");
        return volterra_kernel_circle(t, k, f0);
    }
    return volterra_kernel_line(t, mode, f0);
}

/// h0(x, v) = eps cos(mode x) g(v) on the circle; transform
/// h0^^(k, eta) = eps pi g^(eta) at |k| = mode (2 pi at k = mode = 0).
struct CosinePerturbation {
    double eps;
    long long mode;
    EquilibriumProfile vprofile;

    cplx transform(long long k, double eta) const
    {
        const long long m = mode < 0 ? -mode : mode;
        if (k != m && k != -m)
            return {0.0, 0.0};
        const double xfactor = (m == 0) ? 2.0 * pi : pi;
        return eps * xfactor * vprofile.fourier(eta);
    }
};

/// h0(x, v) = eps e^{-x^2/(2 sx^2)} g(v) on the line; transform
/// h0^^(xi, eta) = eps sx sqrt(2 pi) e^{-xi^2 sx^2/2} g^(eta).
struct GaussianBumpPerturbation {
    double eps;
    double x_width;
    EquilibriumProfile vprofile;

    cplx transform(double xi, double eta) const
    {
        const double sx = x_width;
        return eps * sx * std::sqrt(2.0 * pi) * std::exp(-0.5 * xi * xi * sx * sx)
               * vprofile.fourier(eta);
    }
};

inline cplx forcing(const CosinePerturbation& h0, long long k, double t)
{
    return h0.transform(k, double(k) * t);
}

inline cplx forcing(const GaussianBumpPerturbation& h0, double xi, double t)
{
    return h0.transform(xi, xi * t);
}

/// Double-transform forcing for an arbitrary h0(x, v), by iterated adaptive
/// quadrature. Throws when the quadrature fails to reach the tolerance.
template <class H0>
cplx forcing_by_quadrature(H0&& h0, Curvature c, double mode, double t, double v_max = 16.0,
                           double x_max = 24.0, double tol = 1e-9)
{
    const double eta = mode * t;
    const auto inner = [&](double x) {
        const auto re = [&](double v) { return h0(x, v) * std::cos(eta * v); };
        const auto im = [&](double v) { return -h0(x, v) * std::sin(eta * v); };
        return cplx{integrate_checked(re, -v_max, v_max, tol, 12, "forcing_by_quadrature"),
                    integrate_checked(im, -v_max, v_max, tol, 12, "forcing_by_quadrature")};
    };
    const double xlo = (c == Curvature::sphere) ? 0.0 : -x_max;
    const double xhi = (c == Curvature::sphere) ? 2.0 * pi : x_max;
    const auto fre = [&](double x) {
        const cplx w = inner(x);
        return w.real() * std::cos(mode * x) + w.imag() * std::sin(mode * x);
    };
    const auto fim = [&](double x) {
        const cplx w = inner(x);
        return -w.real() * std::sin(mode * x) + w.imag() * std::cos(mode * x);
    };
    const double re = integrate_checked(fre, xlo, xhi, tol, 12, "forcing_by_quadrature");
    const double im = integrate_checked(fim, xlo, xhi, tol, 12, "forcing_by_quadrature");
    return {re, im};
}

// ---------------------------------------------------------------------------
// Volterra solver (product trapezoidal rule, second order)

struct VolterraProblem {
    double h = 0.0;                // uniform time step
    std::vector<double> t;         // t_i = i h
    std::vector<cplx> kernel;      // K(t_i)
    std::vector<cplx> forcing;     // a(t_i)
    double mode_label = 0.0;       // k or xi, for reporting
};

/// Sample kernel and forcing of one mode on a uniform grid of step h up to T.
template <class Perturbation, class Mode>
VolterraProblem make_mode_problem(const EquilibriumProfile& f0, Curvature c, Mode mode,
                                  const Perturbation& h0, double T, double h)
{
    if (!(h > 0.0) || !(T > 0.0))
        throw std::invalid_argument("make_mode_problem: T and h must be > 0");
    const int n = int(std::llround(T / h));
    VolterraProblem p;
    p.h = h;
    p.mode_label = double(mode);
    p.t.resize(n + 1);
    p.kernel.resize(n + 1);
    p.forcing.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double ti = h * double(i);
        p.t[i] = ti;
        p.kernel[i] = volterra_kernel(ti, double(mode), f0, c);
        p.forcing[i] = forcing(h0, mode, ti);
    }
    // both manifold kernels carry a linear-in-t prefactor
    if (std::abs(p.kernel[0]) > 1e-14)
        throw std::logic_error("make_mode_problem: kernel must vanish at t = 0");
    return p;
}

/// phi(t_i) from phi = a + K * phi by the product trapezoidal rule.
inline std::vector<cplx> solve_volterra(const VolterraProblem& p)
{
    const std::size_t n = p.t.size();
    if (n == 0 || p.kernel.size() != n || p.forcing.size() != n)
        throw std::invalid_argument("solve_volterra: inconsistent sample arrays");
    if (!(p.h > 0.0))
        throw std::invalid_argument("solve_volterra: step must be > 0");
    std::vector<cplx> phi(n);
    phi[0] = p.forcing[0];
    const cplx denom = 1.0 - 0.5 * p.h * p.kernel[0];
    if (std::abs(denom) < 1e-14)
        throw std::invalid_argument("solve_volterra: degenerate step (h K(0) / 2 = 1)");
    for (std::size_t i = 1; i < n; ++i) {
        cplx s = 0.5 * p.kernel[i] * phi[0];
        for (std::size_t j = 1; j < i; ++j)
            s += p.kernel[i - j] * phi[j];
        phi[i] = (p.forcing[i] + p.h * s) / denom;
    }
    return phi;
}

// ---------------------------------------------------------------------------
// Laplace-transformed kernel and Plemelj principal values

/// p.v. int f0'(v)/(v - omega) dv  - i pi f0'(omega).
/// Real part by singularity subtraction over a window symmetric about omega
/// that contains the whole profile support; the remainder is below 1e-40 and
/// is dropped.
inline cplx plemelj_pv(const EquilibriumProfile& f0, double omega)
{
    const double R = f0.support_radius() + std::abs(omega) + 1.0;
    const double gw = f0.derivative(omega);
    const auto regular = [&](double v) {
        const double d = v - omega;
        if (std::abs(d) < 1e-7)
            return f0.second_derivative(omega);
        return (f0.derivative(v) - gw) / d;
    };
    const double left = integrate(regular, omega - R, omega, 1e-12, 18);
    const double right = integrate(regular, omega, omega + R, 1e-12, 18);
    return {left + right, -pi * gw};
}

/// int f0'(v) / (i lambda + (v - omega)) dv for lambda > 0.
inline cplx dispersion_integral(const EquilibriumProfile& f0, double omega, double lambda)
{
    const double S = f0.support_radius();
    const double lo = std::min(-S, omega - 1.0) - 1.0;
    const double hi = std::max(S, omega + 1.0) + 1.0;
    const auto re = [&](double v) {
        const double d = v - omega;
        return f0.derivative(v) * d / (d * d + lambda * lambda);
    };
    const auto im = [&](double v) {
        const double d = v - omega;
        return -f0.derivative(v) * lambda / (d * d + lambda * lambda);
    };
    const double r = integrate(re, lo, omega, 1e-12, 20) + integrate(re, omega, hi, 1e-12, 20);
    const double i = integrate(im, lo, omega, 1e-12, 20) + integrate(im, omega, hi, 1e-12, 20);
    return {r, i};
}

/// Mode prefactor of the Laplace-transformed kernel: -1/|k| on the circle
/// (0 for even k), -tanh(|xi| pi/2)/(2 |xi|) on the line.
inline double laplace_prefactor(double mode, Curvature c)
{
    if (c == Curvature::sphere) {
        const long long k = std::llround(mode);
        if (std::abs(mode - double(k)) > 1e-9)
            throw std::invalid_argument("laplace_prefactor: circle mode must be an integer");
        return -kernel_fourier_circle(k);
    }
    return -kernel_fourier_line(mode);
}

/// K^L at the point xi = (lambda - i omega) k: the adaptive quadrature of the
/// displayed dispersion integral for lambda > 0. At lambda = 0 the value is
/// only defined through the Plemelj limit; that path is taken automatically
/// at critical points of f0' and is an error elsewhere.
inline cplx laplace_kernel(double lambda, double omega, double mode, const EquilibriumProfile& f0,
                           Curvature c)
{
    if (lambda < 0.0)
        throw std::invalid_argument("laplace_kernel: requires lambda >= 0");
    const double pref = laplace_prefactor(mode, c);
    if (pref == 0.0)
        return {0.0, 0.0};
    if (lambda == 0.0) {
        if (std::abs(f0.derivative(omega)) > 1e-10)
            throw std::domain_error(
                "laplace_kernel: lambda = 0 away from a critical point; use plemelj_pv");
        return pref * plemelj_pv(f0, omega);
    }
    return pref * dispersion_integral(f0, omega, lambda);
}

// ---------------------------------------------------------------------------
// Penrose criterion

enum class StabilityVerdict { stable, marginal, unstable, vacuously_stable };

inline std::string verdict_name(StabilityVerdict v)
{
    switch (v) {
    case StabilityVerdict::stable: return "stable";
    case StabilityVerdict::marginal: return "marginal";
    case StabilityVerdict::unstable: return "unstable";
    case StabilityVerdict::vacuously_stable: return "vacuously_stable";
    }
    return "unknown";
}

struct CriticalPoint {
    double omega;
    double principal_value; // Re p.v. int f0'/(v - omega)
    double margin;          // principal_value - threshold
};

struct PenroseOptions {
    double window = 12.0;      // critical points searched in [-window, window]
    double scan_step = 1e-3;
    double refine_tol = 1e-10;
    double marginal_tol = 1e-6;
    int mode_report_max = 9;   // per-mode margins reported for odd |k| <= this
};

struct PenroseReport {
    Curvature manifold = Curvature::sphere;
    double threshold = 0.0; // -1 on S^2, -4/pi on H^2
    std::vector<CriticalPoint> critical_points;
    std::vector<std::pair<int, double>> mode_margins; // sphere only, odd k
    StabilityVerdict verdict = StabilityVerdict::stable;
    std::string note;
};

/// Zeros of f0' in [-window, window] by sign-change scan plus bisection.
inline std::vector<double> critical_points_of(const EquilibriumProfile& f0,
                                              const PenroseOptions& opt = {})
{
    std::vector<double> roots;
    const double lo = -opt.window;
    const long long n = std::llround(2.0 * opt.window / opt.scan_step);
    double prev_v = lo;
    double prev_d = f0.derivative(lo);
    for (long long i = 1; i <= n; ++i) {
        const double v = lo + opt.scan_step * double(i);
        const double d = f0.derivative(v);
        if (prev_d == 0.0) {
            roots.push_back(prev_v);
        } else if (prev_d * d < 0.0) {
            double a = prev_v, b = v, fa = prev_d;
            while (b - a > opt.refine_tol) {
                const double m = 0.5 * (a + b);
                const double fm = f0.derivative(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if (fa * fm < 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_v = v;
        prev_d = d;
    }
    // collapse near-duplicates from the scan
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || r - out.back() > 1e-8)
            out.push_back(r);
    return out;
}

/// Penrose verdict against the manifold threshold (-1 on S^2 from the binding
/// |k| = 1 mode; -4/pi on H^2, the xi -> 0 infimum of 2 xi / tanh(xi pi/2)).
inline PenroseReport penrose_check(const EquilibriumProfile& f0, Curvature c,
                                   const PenroseOptions& opt = {})
{
    PenroseReport rep;
    rep.manifold = c;
    rep.threshold = (c == Curvature::sphere) ? -1.0 : -4.0 / pi;

    const auto roots = critical_points_of(f0, opt);
    if (roots.empty()) {
        rep.verdict = StabilityVerdict::vacuously_stable;
        rep.note = "no critical points of f0' found in the scan window";
        return rep;
    }

    double min_pv = std::numeric_limits<double>::infinity();
    bool any_marginal = false;
    bool any_unstable = false;
    for (double w : roots) {
        const double pv = plemelj_pv(f0, w).real();
        const double margin = pv - rep.threshold;
        rep.critical_points.push_back({w, pv, margin});
        min_pv = std::min(min_pv, pv);
        if (std::abs(margin) <= opt.marginal_tol)
            any_marginal = true;
        else if (margin < 0.0)
            any_unstable = true;
    }
    if (c == Curvature::sphere) {
        for (int k = 1; k <= opt.mode_report_max; k += 2)
            rep.mode_margins.emplace_back(k, min_pv + double(k));
    }
    rep.verdict = any_marginal ? StabilityVerdict::marginal
                 : any_unstable ? StabilityVerdict::unstable
                                : StabilityVerdict::stable;
    return rep;
}

/// Separation u at which the mass-M two-stream profile touches the sphere
/// threshold: root of Re p.v.(omega = 0) = -1, by bisection. Requires a sign
/// change of the margin over [lo, hi].
inline double two_stream_critical_separation(double mass, double width = 1.0, double lo = 0.05,
                                             double hi = 2.0, double u_tol = 1e-10)
{
    const auto margin = [&](double u) {
        return plemelj_pv(EquilibriumProfile::two_stream(u, mass, width), 0.0).real() + 1.0;
    };
    double flo = margin(lo);
    const double fhi = margin(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if (flo * fhi > 0.0)
        throw std::invalid_argument(
            "two_stream_critical_separation: no threshold crossing in [lo, hi]");
    while (hi - lo > u_tol) {
        const double m = 0.5 * (lo + hi);
        const double fm = margin(m);
        if (fm == 0.0)
            return m;
        if (flo * fm < 0.0) {
            hi = m;
        } else {
            lo = m;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// decay fitting and the weighted spectral norm

enum class DecayModel { exponential, algebraic };

inline std::string decay_model_name(DecayModel m)
{
    return m == DecayModel::exponential ? "exponential" : "algebraic";
}

struct DecayFit {
    DecayModel model = DecayModel::exponential;
    double rate = 0.0;          // decay rate delta (exponential) or exponent p (algebraic)
    double log_amplitude = 0.0; // intercept of the linearized fit
    double r_squared = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    int samples_used = 0;
};

/// Least squares on (t, log y) or (log t, log y). Only samples inside the
/// window and above 1e3 * eps * max(y) enter; fewer than 10 such samples is
/// an error.
inline DecayFit fit_decay(std::span<const double> t, std::span<const double> y, DecayModel model,
                          double window_lo, double window_hi)
{
    if (t.size() != y.size())
        throw std::invalid_argument("fit_decay: size mismatch");
    double ymax = 0.0;
    for (double v : y)
        ymax = std::max(ymax, v);
    const double floor_y = 1e3 * std::numeric_limits<double>::epsilon() * ymax;

    std::vector<double> xs, ls;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < window_lo || t[i] > window_hi)
            continue;
        if (!(y[i] > floor_y))
            continue;
        if (model == DecayModel::algebraic && !(t[i] > 0.0))
            continue;
        xs.push_back(model == DecayModel::algebraic ? std::log(t[i]) : t[i]);
        ls.push_back(std::log(y[i]));
    }
    if (xs.size() < 10)
        throw std::runtime_error("fit_decay: window too short (< 10 usable samples)");

    const double n = double(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ls[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ls[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0)
        throw std::runtime_error("fit_decay: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ss_res = 0.0, ss_tot = 0.0;
    const double mean = sy / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fit = intercept + slope * xs[i];
        ss_res += (ls[i] - fit) * (ls[i] - fit);
        ss_tot += (ls[i] - mean) * (ls[i] - mean);
    }

    DecayFit out;
    out.model = model;
    out.rate = -slope;
    out.log_amplitude = intercept;
    out.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    out.window_lo = window_lo;
    out.window_hi = window_hi;
    out.samples_used = int(xs.size());
    return out;
}

/// ||rho||_{F^lambda} = int e^{lambda |xi|} |rho^(xi)| d xi approximated on the
/// positive probe grid (doubled for the negative axis). Signals when the
/// weighted integrand fails to decay toward the end of the grid.
inline double hyperbolic_norm(std::span<const double> xi_grid, std::span<const double> abs_rho_hat,
                              double lambda_prime)
{
    const std::size_t n = xi_grid.size();
    if (n < 4 || abs_rho_hat.size() != n)
        throw std::invalid_argument("hyperbolic_norm: need matching grids with >= 4 points");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xi_grid[i] > 0.0) || (i > 0 && xi_grid[i] <= xi_grid[i - 1]))
            throw std::invalid_argument("hyperbolic_norm: xi grid must be positive increasing");
        g[i] = std::exp(lambda_prime * xi_grid[i]) * abs_rho_hat[i];
    }
    double tail_late = 0.0, tail_early = 0.0;
    const std::size_t eighth = std::max<std::size_t>(1, n / 8);
    for (std::size_t i = n - eighth; i < n; ++i)
        tail_late += g[i];
    for (std::size_t i = n - 2 * eighth; i < n - eighth; ++i)
        tail_early += g[i];
    if (tail_late > tail_early && tail_late > 1e-300)
        throw std::runtime_error("hyperbolic_norm: weighted integrand does not decay");

    double s = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        s += 0.5 * (g[i] + g[i + 1]) * (xi_grid[i + 1] - xi_grid[i]);
    return 2.0 * s;
}

/// Volterra solutions across a xi probe grid, aggregated into the weighted
/// norm at every time step.
struct NormSeries {
    std::vector<double> t;
    std::vector<double> norm;
};

inline NormSeries hyperbolic_decay_study(const EquilibriumProfile& f0,
                                         const GaussianBumpPerturbation& h0,
                                         std::span<const double> xi_grid, double T, double h,
                                         double lambda_prime)
{
    const std::size_t nxi = xi_grid.size();
    std::vector<std::vector<double>> amp(nxi);
    std::size_t nt = 0;
    for (std::size_t j = 0; j < nxi; ++j) {
        const auto problem = make_mode_problem(f0, Curvature::hyperbolic, xi_grid[j], h0, T, h);
        const auto phi = solve_volterra(problem);
        nt = phi.size();
        amp[j].resize(nt);
        for (std::size_t i = 0; i < nt; ++i)
            amp[j][i] = std::abs(phi[i]);
    }
    NormSeries out;
    out.t.resize(nt);
    out.norm.resize(nt);
    std::vector<double> column(nxi);
    for (std::size_t i = 0; i < nt; ++i) {
        out.t[i] = h * double(i);
        for (std::size_t j = 0; j < nxi; ++j)
            column[j] = amp[j][i];
        out.norm[i] = hyperbolic_norm(xi_grid, column, lambda_prime);
    }
    return out;
}

/// Log-spaced grid helper for probe frequencies.
inline std::vector<double> log_spaced(double lo, double hi, int n)
{
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw std::invalid_argument("log_spaced: need 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    const double r = std::log(hi / lo);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::exp(r * double(i) / double(n - 1));
    return g;
}

} // namespace geovlasov
