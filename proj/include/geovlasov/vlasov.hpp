#pragma once

// Semi-Lagrangian spectral solver for the reduced 1-D system along a geodesic:
//     df/dt + v df/dx + (W * d rho/dx) df/dv = 0,   rho = int f dv
// on the circle (sphere geodesic) or the line (hyperbolic geodesic).
//
// Transport in x is an exact per-row spectral shift; the velocity kick is a
// per-column cubic-spline shift; the two are composed with Strang splitting.
// The force is applied in Fourier space through the closed-form multipliers
//     circle:  F^(k)  = i sgn(k) rho^(k)   (odd k, else 0)
//     line:    F^(xi) = (i/2) tanh(xi pi/2) rho^(xi)  on the [-2L, 2L) padding.
//
// On the line each v-row is split as (boundary value) + deviation: a constant
// background is shift-invariant and force-free (the homogeneous equilibrium
// of the infinite line), and the compact-support requirements apply to the
// deviation.

#include "geovlasov/fft.hpp"
#include "geovlasov/geometry.hpp"
#include "geovlasov/spline.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace geovlasov {

// ---------------------------------------------------------------------------
// grids and states

struct PhaseGrid {
    Curvature manifold = Curvature::sphere;
    int nx = 0;
    int nv = 0;
    double L = pi; // circle: fixed domain [0, 2pi); line: [-L, L)
    double V = 0.0;

    static PhaseGrid circle(int nx, int nv, double V)
    {
        PhaseGrid g{Curvature::sphere, nx, nv, pi, V};
        g.validate();
        return g;
    }

    static PhaseGrid line(int nx, int nv, double L, double V)
    {
        PhaseGrid g{Curvature::hyperbolic, nx, nv, L, V};
        g.validate();
        return g;
    }

    void validate() const
    {
        if (nx < 16 || nv < 16)
            throw std::invalid_argument("PhaseGrid: nx and nv must be >= 16");
        if (!(V > 0.0))
            throw std::invalid_argument("PhaseGrid: V must be > 0");
        if (manifold == Curvature::hyperbolic && !(L > 0.0))
            throw std::invalid_argument("PhaseGrid: L must be > 0 on the line");
    }

    double domain_length() const { return manifold == Curvature::sphere ? 2.0 * pi : 2.0 * L; }
    double dx() const { return domain_length() / double(nx); }
    double dv() const { return 2.0 * V / double(nv - 1); }
    double x_node(int i) const
    {
        return manifold == Curvature::sphere ? dx() * double(i) : -L + dx() * double(i);
    }
    double v_node(int j) const { return -V + dv() * double(j); }
};

/// Sampled phase-space density f(x_i, v_j), stored x-major.
struct DistributionField {
    PhaseGrid grid;
    std::vector<double> values; // values[i * nv + j] = f(x_i, v_j)
    double time = 0.0;
    double running_min = 0.0; // most negative value seen during evolution

    double& at(int i, int j) { return values[std::size_t(i) * grid.nv + j]; }
    double at(int i, int j) const { return values[std::size_t(i) * grid.nv + j]; }
};

/// Build a state from f(x, v); initial values must be nonnegative.
template <class F>
DistributionField make_state(const PhaseGrid& grid, F&& f)
{
    DistributionField out;
    out.grid = grid;
    out.values.resize(std::size_t(grid.nx) * grid.nv);
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.nv; ++j) {
            const double v = f(grid.x_node(i), grid.v_node(j));
            if (v < 0.0)
                throw std::invalid_argument("make_state: initial values must be >= 0");
            out.at(i, j) = v;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// density and force

/// rho(x_i) = int f dv by the trapezoid rule over the v grid.
inline std::vector<double> density(const DistributionField& f)
{
    const int nx = f.grid.nx, nv = f.grid.nv;
    const double dv = f.grid.dv();
    std::vector<double> rho(nx, 0.0);
    for (int i = 0; i < nx; ++i) {
        double s = 0.5 * (f.at(i, 0) + f.at(i, nv - 1));
        for (int j = 1; j < nv - 1; ++j)
            s += f.at(i, j);
        rho[i] = s * dv;
    }
    return rho;
}

namespace detail {

inline double line_boundary_value(std::span<const double> row)
{
    return 0.5 * (row.front() + row.back());
}

/// Max |imag| guard after an inverse transform that must be real.
inline void check_real(const std::vector<cplx>& w, double scale, const char* who)
{
    double m = 0.0;
    for (const auto& z : w)
        m = std::max(m, std::abs(z.imag()));
    if (m > 1e-12 * std::max(1.0, scale))
        throw std::logic_error(std::string(who) + ": non-real spectral result");
}

} // namespace detail

/// F = W * d rho/dx through the spectral multipliers. Real to 1e-12.
inline std::vector<double> force(std::span<const double> rho, const PhaseGrid& grid)
{
    const int nx = grid.nx;
    if (int(rho.size()) != nx)
        throw std::invalid_argument("force: density size mismatch");

    double linf = 0.0;
    for (double r : rho)
        linf = std::max(linf, std::abs(r));

    if (grid.manifold == Curvature::sphere) {
        std::vector<cplx> w(rho.begin(), rho.end());
        fft_inplace(w, false);
        for (int j = 0; j < nx; ++j) {
            const long long k = signed_mode(j, nx);
            if (k % 2 == 0) {
                w[j] = 0.0;
            } else {
                w[j] *= cplx{0.0, k > 0 ? 1.0 : -1.0};
            }
        }
        fft_inplace(w, true);
        detail::check_real(w, linf, "force");
        std::vector<double> F(nx);
        for (int j = 0; j < nx; ++j)
            F[j] = w[j].real();
        return F;
    }

    // line: zero-padded deviation on [-2L, 2L)
    const double c = detail::line_boundary_value(rho);
    const int np = 2 * nx;
    std::vector<cplx> w(np, cplx{0.0, 0.0});
    for (int j = 0; j < nx; ++j)
        w[j] = rho[j] - c;
    fft_inplace(w, false);
    const double dxi = 2.0 * pi / (4.0 * grid.L);
    for (int j = 0; j < np; ++j) {
        if (np % 2 == 0 && j == np / 2) {
            w[j] = 0.0; // unpaired Nyquist bin of the odd multiplier
            continue;
        }
        const double xi = dxi * double(signed_mode(j, np));
        w[j] *= cplx{0.0, 0.5 * std::tanh(0.5 * pi * xi)};
    }
    fft_inplace(w, true);
    detail::check_real(w, linf, "force");
    std::vector<double> F(nx);
    for (int j = 0; j < nx; ++j)
        F[j] = w[j].real();
    return F;
}

// ---------------------------------------------------------------------------
// transport and kick

/// Exact spectral shift of each v-row by v dt. On the line, signals when the
/// deviation within five cells of the x boundary carries mass above 1e-10.
inline void transport_x(DistributionField& f, double dt)
{
    if (dt == 0.0)
        return;
    const int nx = f.grid.nx, nv = f.grid.nv;
    const bool circle = f.grid.manifold == Curvature::sphere;
    const int np = circle ? nx : 2 * nx;
    const double mode_scale =
        circle ? 1.0 : 2.0 * pi / (4.0 * f.grid.L); // k or xi per signed bin index

    std::vector<cplx> w(np);
    std::vector<cplx> phase(np / 2 + 1);
    const int margin = 5;
    double margin_mass = 0.0;

    for (int j = 0; j < nv; ++j) {
        const double v = f.grid.v_node(j);

        double c = 0.0;
        if (!circle) {
            double lo = 0.0, hi = 0.0;
            c = 0.5 * (f.at(0, j) + f.at(nx - 1, j));
            for (int i = 0; i < margin; ++i) {
                lo += std::abs(f.at(i, j) - c);
                hi += std::abs(f.at(nx - 1 - i, j) - c);
            }
            margin_mass += (lo + hi) * f.grid.dx() * f.grid.dv();
        }

        for (int i = 0; i < np; ++i)
            w[i] = (i < nx) ? cplx{f.at(i, j) - c, 0.0} : cplx{0.0, 0.0};
        fft_inplace(w, false);

        // phase(k) = e^{-i k_scaled v dt}, built incrementally from the base rotation
        const cplx base = std::polar(1.0, -mode_scale * v * dt);
        phase[0] = {1.0, 0.0};
        for (int k = 1; k <= np / 2; ++k)
            phase[k] = phase[k - 1] * base;
        for (int i = 1; i < np; ++i) {
            if (np % 2 == 0 && i == np / 2) {
                w[i] *= phase[np / 2].real(); // cos at the unpaired Nyquist bin
            } else if (i <= (np - 1) / 2) {
                w[i] *= phase[i];
            } else {
                w[i] *= std::conj(phase[np - i]);
            }
        }
        fft_inplace(w, true);
        for (int i = 0; i < nx; ++i)
            f.at(i, j) = w[i].real() + c;
    }

    if (!circle && margin_mass > 1e-10)
        throw std::runtime_error("transport_x: support reached the x-domain wall");
}

/// Semi-Lagrangian shift of each x-column by F(x) dt, cubic splines with zero
/// extension beyond [-V, V]. Shifts above V/4 are rejected.
inline void kick_v(DistributionField& f, std::span<const double> F, double dt)
{
    const int nx = f.grid.nx, nv = f.grid.nv;
    if (int(F.size()) != nx)
        throw std::invalid_argument("kick_v: force size mismatch");
    double fmax = 0.0;
    for (double x : F)
        fmax = std::max(fmax, std::abs(x));
    if (fmax * std::abs(dt) > f.grid.V / 4.0)
        throw std::runtime_error("kick_v: |F| dt exceeds V/4");
    if (dt == 0.0 || fmax == 0.0)
        return;

    const double dv = f.grid.dv();
    std::vector<double> column(nv), shifted(nv);
    CubicSpline spline(-f.grid.V, dv, std::vector<double>(nv, 0.0));
    for (int i = 0; i < nx; ++i) {
        const double s = F[i] * dt;
        for (int j = 0; j < nv; ++j)
            column[j] = f.at(i, j);
        spline.rebuild(column);
        for (int j = 0; j < nv; ++j) {
            const double val = spline(f.grid.v_node(j) - s);
            shifted[j] = val;
            f.running_min = std::min(f.running_min, val);
        }
        for (int j = 0; j < nv; ++j)
            f.at(i, j) = shifted[j];
    }
}

struct StepOptions {
    bool forces_enabled = true;
};

/// Strang step: half transport, force from the mid-time density, full kick,
/// half transport. Second order in dt.
inline void strang_step(DistributionField& f, double dt, const StepOptions& opt = {})
{
    if (!(dt > 0.0))
        throw std::invalid_argument("strang_step: dt must be > 0");
    if (!opt.forces_enabled) {
        transport_x(f, dt);
        f.time += dt;
        return;
    }
    transport_x(f, 0.5 * dt);
    const auto rho = density(f);
    const auto F = force(rho, f.grid);
    kick_v(f, F, dt);
    transport_x(f, 0.5 * dt);
    f.time += dt;
}

// ---------------------------------------------------------------------------
// diagnostics

struct DiagnosticsRecord {
    double time = 0.0;
    double mass = 0.0;
    double e_kin = 0.0;
    double e_pot = 0.0;        // int U rho dx
    double e_mech = 0.0;       // E_kin - int U rho, recorded for comparison
    double e_consistent = 0.0; // E_kin - (1/2) int U rho; conserved by the even kernel
    double entropy = 0.0;
    double min_f = 0.0;
    double max_force = 0.0;      // L-inf of W * d rho/dx at this time
    double v_boundary_max = 0.0; // max |f| within 5 cells of the v boundary
    std::vector<std::pair<std::string, double>> casimirs;
    std::vector<double> mode_labels; // k = 1..4 or the four xi probes
    std::vector<cplx> rho_modes;     // continuum-convention transforms
};

using CasimirList = std::vector<std::pair<std::string, std::function<double(double)>>>;

inline CasimirList default_casimirs()
{
    return {{"s2", [](double s) { return s * s; }}};
}

/// Potential on the geodesic, U = W * rho through the spectral multipliers.
inline std::vector<double> potential_on_geodesic(std::span<const double> rho,
                                                 const PhaseGrid& grid)
{
    const int nx = grid.nx;
    if (int(rho.size()) != nx)
        throw std::invalid_argument("potential_on_geodesic: density size mismatch");
    const bool circle = grid.manifold == Curvature::sphere;
    const int np = circle ? nx : 2 * nx;
    const double c = circle ? 0.0 : detail::line_boundary_value(rho);
    std::vector<cplx> w(np, cplx{0.0, 0.0});
    for (int j = 0; j < nx; ++j)
        w[j] = rho[j] - c;
    fft_inplace(w, false);
    for (int j = 0; j < np; ++j) {
        if (circle) {
            w[j] *= kernel_fourier_circle(signed_mode(j, np));
        } else {
            const double xi = 2.0 * pi / (4.0 * grid.L) * double(signed_mode(j, np));
            w[j] *= kernel_fourier_line(xi);
        }
    }
    fft_inplace(w, true);
    std::vector<double> U(nx);
    for (int j = 0; j < nx; ++j)
        U[j] = w[j].real();
    return U;
}

/// Spatial Fourier modes of the density (deviation from the boundary value on
/// the line), continuum convention rho^(k) = int rho e^{-ikx} dx.
inline std::vector<cplx> density_modes(std::span<const double> rho, const PhaseGrid& grid,
                                       std::span<const double> labels)
{
    const int nx = grid.nx;
    const double dx = grid.dx();
    const double c =
        grid.manifold == Curvature::sphere ? 0.0 : detail::line_boundary_value(rho);
    std::vector<cplx> out;
    out.reserve(labels.size());
    for (double lbl : labels) {
        cplx s{0.0, 0.0};
        for (int i = 0; i < nx; ++i)
            s += (rho[i] - c) * std::polar(1.0, -lbl * grid.x_node(i));
        out.push_back(s * dx);
    }
    return out;
}

inline std::vector<double> default_mode_labels(const PhaseGrid& grid)
{
    std::vector<double> labels(4);
    for (int m = 1; m <= 4; ++m)
        labels[m - 1] = grid.manifold == Curvature::sphere
                            ? double(m)
                            : double(m) * pi / (2.0 * grid.L);
    return labels;
}

inline DiagnosticsRecord diagnostics(const DistributionField& f,
                                     const CasimirList& casimirs = default_casimirs())
{
    const int nx = f.grid.nx, nv = f.grid.nv;
    const double dx = f.grid.dx(), dv = f.grid.dv();

    DiagnosticsRecord rec;
    rec.time = f.time;
    rec.min_f = f.values.empty() ? 0.0 : f.values[0];
    rec.casimirs.reserve(casimirs.size());
    for (const auto& [name, fn] : casimirs)
        rec.casimirs.emplace_back(name, 0.0);

    const int vmargin = 5;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nv; ++j) {
            const double val = f.at(i, j);
            const double wv = (j == 0 || j == nv - 1) ? 0.5 : 1.0;
            const double w = wv * dx * dv;
            const double v = f.grid.v_node(j);
            rec.mass += w * val;
            rec.e_kin += 0.5 * w * val * v * v;
            if (val > 0.0)
                rec.entropy -= w * val * std::log(val);
            rec.min_f = std::min(rec.min_f, val);
            if (j < vmargin || j >= nv - vmargin)
                rec.v_boundary_max = std::max(rec.v_boundary_max, std::abs(val));
            for (std::size_t q = 0; q < casimirs.size(); ++q)
                rec.casimirs[q].second += w * casimirs[q].second(val);
        }
    }

    const auto rho = density(f);
    const auto U = potential_on_geodesic(rho, f.grid);
    for (int i = 0; i < nx; ++i)
        rec.e_pot += dx * U[i] * rho[i];
    rec.e_mech = rec.e_kin - rec.e_pot;
    rec.e_consistent = rec.e_kin - 0.5 * rec.e_pot;
    for (const double Fx : force(rho, f.grid))
        rec.max_force = std::max(rec.max_force, std::abs(Fx));

    rec.mode_labels = default_mode_labels(f.grid);
    rec.rho_modes = density_modes(rho, f.grid, rec.mode_labels);
    return rec;
}

// ---------------------------------------------------------------------------
// evolution driver

struct RunOptions {
    int cadence = 8;
    bool forces_enabled = true;
    CasimirList casimirs = default_casimirs();
};

struct RunResult {
    DistributionField state;
    std::vector<DiagnosticsRecord> history;
};

/// Check the compact-support contract of the line grid at t = 0.
inline void check_line_support(const DistributionField& f)
{
    const int nx = f.grid.nx, nv = f.grid.nv;
    for (int j = 0; j < nv; ++j) {
        const double c = 0.5 * (f.at(0, j) + f.at(nx - 1, j));
        for (int i = 0; i < 5; ++i) {
            if (std::abs(f.at(i, j) - c) > 1e-12 || std::abs(f.at(nx - 1 - i, j) - c) > 1e-12)
                throw std::invalid_argument(
                    "run: line state must deviate < 1e-12 from the background within 5 cells "
                    "of the x boundary");
        }
    }
}

/// Advance by Strang steps, emitting diagnostics every `cadence` steps (plus
/// the initial and final states). T is rounded to a whole number of steps.
/// Deterministic for fixed inputs.
inline RunResult run(DistributionField f0, double T, double dt, const RunOptions& opt = {})
{
    if (!(T > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("run: T and dt must be > 0");
    if (opt.cadence < 1)
        throw std::invalid_argument("run: cadence must be >= 1");
    if (f0.grid.manifold == Curvature::hyperbolic)
        check_line_support(f0);

    const long long steps = std::llround(T / dt);
    RunResult out{std::move(f0), {}};
    out.history.push_back(diagnostics(out.state, opt.casimirs));
    const StepOptions sopt{opt.forces_enabled};
    for (long long n = 1; n <= steps; ++n) {
        strang_step(out.state, dt, sopt);
        if (n % opt.cadence == 0 || n == steps)
            out.history.push_back(diagnostics(out.state, opt.casimirs));
    }
    return out;
}

} // namespace geovlasov
