#pragma once

// Gravitational potential and field on the full 2-D manifold:
//   U(x) = (1/4pi) int rho(y) log[(1 + sigma x.y)/(sigma - x.y)] dOmega(y)
//   F(x) = (1/2pi sigma) int rho(y) (y - sigma (x.y) x)/(1 - (x.y)^2) dOmega(y)
// by tensor quadrature (Gauss-Legendre in alpha, trapezoid in theta), the
// closed-form point-mass pair, the Gauss-law flux through colatitude circles,
// and a constrained RK4 integrator for x' = v, v' = F - sigma (v.v) x.

#include "geovlasov/geometry.hpp"
#include "geovlasov/quadrature.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace geovlasov {

// ---------------------------------------------------------------------------
// densities

/// Nonnegative density sampled on a tensor (alpha, theta) grid, with the
/// quadrature weights carrying the volume form sn(alpha) d alpha d theta.
class SurfaceDensity {
public:
    template <class F>
    static SurfaceDensity from_function(Curvature c, int n_alpha, int n_theta, F&& rho,
                                        double alpha_max = -1.0)
    {
        if (n_alpha < 2 || n_theta < 4)
            throw std::invalid_argument("SurfaceDensity: grid too small");
        if (c == Curvature::sphere) {
            alpha_max = pi;
        } else if (!(alpha_max > 0.0)) {
            throw std::invalid_argument("SurfaceDensity: hyperbolic grid needs alpha_max > 0");
        }
        SurfaceDensity d;
        d.manifold_ = c;
        d.alpha_max_ = alpha_max;
        auto rule = gauss_legendre(n_alpha, 0.0, alpha_max);
        d.alpha_nodes_ = std::move(rule.nodes);
        d.alpha_weights_ = std::move(rule.weights);
        d.theta_nodes_.resize(n_theta);
        d.dtheta_ = 2.0 * pi / double(n_theta);
        for (int j = 0; j < n_theta; ++j)
            d.theta_nodes_[j] = d.dtheta_ * double(j);
        d.values_.resize(std::size_t(n_alpha) * std::size_t(n_theta));
        d.points_.resize(d.values_.size());
        for (int i = 0; i < n_alpha; ++i) {
            for (int j = 0; j < n_theta; ++j) {
                const double v = rho(d.alpha_nodes_[i], d.theta_nodes_[j]);
                if (v < 0.0)
                    throw std::invalid_argument("SurfaceDensity: negative density value");
                const std::size_t q = std::size_t(i) * n_theta + j;
                d.values_[q] = v;
                d.points_[q] =
                    AmbientPoint::from_angles(d.alpha_nodes_[i], d.theta_nodes_[j], c).coords();
            }
        }
        return d;
    }

    Curvature manifold() const { return manifold_; }
    int n_alpha() const { return int(alpha_nodes_.size()); }
    int n_theta() const { return int(theta_nodes_.size()); }
    double alpha_node(int i) const { return alpha_nodes_[i]; }
    double theta_node(int j) const { return theta_nodes_[j]; }
    double value(int i, int j) const { return values_[std::size_t(i) * n_theta() + j]; }
    const Vec3& point(int i, int j) const { return points_[std::size_t(i) * n_theta() + j]; }

    /// Full quadrature weight of node (i, j), including the volume form.
    double weight(int i, int j) const
    {
        (void)j;
        return alpha_weights_[i] * dtheta_ * sn(alpha_nodes_[i], manifold_);
    }

    double total_mass() const
    {
        double m = 0.0;
        for (int i = 0; i < n_alpha(); ++i)
            for (int j = 0; j < n_theta(); ++j)
                m += weight(i, j) * value(i, j);
        return m;
    }

private:
    Curvature manifold_ = Curvature::sphere;
    double alpha_max_ = pi;
    double dtheta_ = 0.0;
    std::vector<double> alpha_nodes_;
    std::vector<double> alpha_weights_;
    std::vector<double> theta_nodes_;
    std::vector<double> values_;
    std::vector<Vec3> points_; // embedded node coordinates, cached
};

/// Point mass, kept analytic: Example-style closed forms for U and F.
struct PointMassDensity {
    AmbientPoint location;
    double mass;
};

namespace detail {

// log argument (1 + sigma c)/(sigma - c); positive away from coincidence
// (c -> sigma branch) and, on the sphere, away from the antipode.
inline bool log_kernel_singular(double c, Curvature curv)
{
    if (curv == Curvature::sphere)
        return (1.0 - c * c) < 1e-13;
    return (c * c - 1.0) < 1e-13;
}

inline double log_kernel(double c, Curvature curv)
{
    const double s = curvature_sign(curv);
    return std::log((1.0 + s * c) / (s - c));
}

} // namespace detail

// ---------------------------------------------------------------------------
// potential and field

/// Potential of a gridded density. Quadrature nodes colliding with the
/// evaluation point (or its antipode) are excluded; their log singularity is
/// integrable and the omitted cell is quantified by refinement studies.
inline double potential_at(const SurfaceDensity& rho, const AmbientPoint& x)
{
    if (rho.manifold() != x.manifold())
        throw std::invalid_argument("potential_at: manifold mismatch");
    const Curvature c = x.manifold();
    double u = 0.0;
    for (int i = 0; i < rho.n_alpha(); ++i) {
        for (int j = 0; j < rho.n_theta(); ++j) {
            const double r = rho.value(i, j);
            if (r == 0.0)
                continue;
            const Vec3& y = rho.point(i, j);
            const double dot = sdot(x.coords(), y, c);
            if (detail::log_kernel_singular(dot, c))
                continue;
            u += rho.weight(i, j) * r * detail::log_kernel(dot, c);
        }
    }
    return u / (4.0 * pi);
}

inline double potential_at(const PointMassDensity& pm, const AmbientPoint& x)
{
    const double d = geodesic_distance(pm.location, x);
    return pm.mass * greens_function(d, x.manifold()); // throws at coincidence/antipode
}

namespace detail {

inline Vec3 field_term(const Vec3& x, const Vec3& y, double dot, Curvature c)
{
    const double s = curvature_sign(c);
    const Vec3 num = y - s * dot * x;
    return num * (1.0 / (s * (1.0 - dot * dot)));
}

/// Field vector at a raw ambient position (normalized onto the manifold
/// first, matching the degree-0 homogeneous extension of the potential).
inline Vec3 field_vec(const SurfaceDensity& rho, const Vec3& pos)
{
    const Curvature c = rho.manifold();
    const Vec3 x = normalize_to_manifold(pos, c);
    Vec3 f{0.0, 0.0, 0.0};
    for (int i = 0; i < rho.n_alpha(); ++i) {
        for (int j = 0; j < rho.n_theta(); ++j) {
            const double r = rho.value(i, j);
            if (r == 0.0)
                continue;
            const Vec3& y = rho.point(i, j);
            const double dot = sdot(x, y, c);
            if (log_kernel_singular(dot, c))
                continue;
            f += rho.weight(i, j) * r * field_term(x, y, dot, c);
        }
    }
    return f * (1.0 / (2.0 * pi));
}

inline Vec3 field_vec(const PointMassDensity& pm, const Vec3& pos)
{
    const Curvature c = pm.location.manifold();
    const Vec3 x = normalize_to_manifold(pos, c);
    const Vec3 y = pm.location.coords();
    const double dot = sdot(x, y, c);
    if (log_kernel_singular(dot, c))
        throw std::domain_error("field_at: point-mass singularity");
    return field_term(x, y, dot, c) * (pm.mass / (2.0 * pi));
}

} // namespace detail

/// F(x) = grad U; tangent to the manifold at x (Euler identity x.F = 0).
template <class Density>
TangentVector field_at(const Density& rho, const AmbientPoint& x)
{
    return TangentVector(x, detail::field_vec(rho, x.coords()));
}

// ---------------------------------------------------------------------------
// Gauss's law on the sphere

inline Curvature manifold_of(const SurfaceDensity& d) { return d.manifold(); }
inline Curvature manifold_of(const PointMassDensity& d) { return d.location.manifold(); }

/// Line integral of the field across the colatitude-alpha circle, oriented so
/// that a positive enclosed mass gives a positive flux; equals the enclosed
/// mass (minus the antipodal image mass the Green's function places at -y).
template <class Density>
double gauss_flux(const Density& rho, double alpha, int n_theta = 512)
{
    if (manifold_of(rho) != Curvature::sphere)
        throw std::invalid_argument("gauss_flux: defined on the sphere only");
    if (!(alpha > 0.0) || !(alpha < pi))
        throw std::domain_error("gauss_flux: degenerate curve at the poles");
    double s = 0.0;
    const double dtheta = 2.0 * pi / double(n_theta);
    for (int j = 0; j < n_theta; ++j) {
        const double theta = dtheta * double(j);
        const AmbientPoint x = AmbientPoint::from_angles(alpha, theta, Curvature::sphere);
        const Vec3 f = detail::field_vec(rho, x.coords());
        s += -sdot(f, e_alpha(alpha, theta, Curvature::sphere), Curvature::sphere);
    }
    return s * dtheta * std::sin(alpha);
}

// ---------------------------------------------------------------------------
// constrained particle motion

struct ParticleState {
    AmbientPoint position;
    TangentVector velocity;
    double time = 0.0;

    ParticleState(const AmbientPoint& x, const TangentVector& v, double t = 0.0)
        : position(x), velocity(v), time(t)
    {
        if (v.manifold() != x.manifold())
            throw std::invalid_argument("ParticleState: manifold mismatch");
    }
};

struct TrajectorySample {
    double time;
    Vec3 position;
    Vec3 velocity;
};

struct IntegrationResult {
    std::vector<TrajectorySample> trajectory;
    double max_position_drift = 0.0; // |x.x - sigma| before projection
    double max_tangency_drift = 0.0; // |x.v| before projection
};

/// Classical RK4 on x' = v, v' = F(x) - sigma (v.v) x with post-step
/// projection of x onto the constraint surface and v onto the tangent space.
/// `tangent_force` maps a raw ambient position to the field vector; pass
/// nullptr for free (geodesic) motion.
inline IntegrationResult integrate_particle(const ParticleState& state,
                                            const std::function<Vec3(const Vec3&)>& tangent_force,
                                            double dt, int steps)
{
    if (dt < 0.0)
        throw std::invalid_argument("integrate_particle: dt must be >= 0");
    if (steps < 0)
        throw std::invalid_argument("integrate_particle: steps must be >= 0");
    const Curvature c = state.position.manifold();
    const double sigma = curvature_sign(c);

    const auto accel = [&](const Vec3& x, const Vec3& v) {
        Vec3 a = -sigma * sdot(v, v, c) * x;
        if (tangent_force)
            a += tangent_force(x);
        return a;
    };

    IntegrationResult out;
    Vec3 x = state.position.coords();
    Vec3 v = state.velocity.components();
    double t = state.time;
    out.trajectory.push_back({t, x, v});
    if (dt == 0.0 || steps == 0) {
        // identity on the state
        return out;
    }

    for (int n = 0; n < steps; ++n) {
        const Vec3 k1x = v, k1v = accel(x, v);
        const Vec3 k2x = v + 0.5 * dt * k1v, k2v = accel(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v);
        const Vec3 k3x = v + 0.5 * dt * k2v, k3v = accel(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v);
        const Vec3 k4x = v + dt * k3v, k4v = accel(x + dt * k3x, v + dt * k3v);
        x += (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        t = state.time + dt * double(n + 1);

        out.max_position_drift =
            std::max(out.max_position_drift, std::abs(sdot(x, x, c) - sigma));
        out.max_tangency_drift = std::max(out.max_tangency_drift, std::abs(sdot(x, v, c)));
        x = normalize_to_manifold(x, c);
        v = tangent_project(x, v, c);
        out.trajectory.push_back({t, x, v});
    }
    return out;
}

inline IntegrationResult integrate_particle(const ParticleState& state, double dt, int steps)
{
    return integrate_particle(state, nullptr, dt, steps);
}

template <class Density>
IntegrationResult integrate_particle(const ParticleState& state, const Density& rho, double dt,
                                     int steps)
{
    const std::function<Vec3(const Vec3&)> force_fn =
        [&rho](const Vec3& x) { return detail::field_vec(rho, x); };
    return integrate_particle(state, force_fn, dt, steps);
}

} // namespace geovlasov
