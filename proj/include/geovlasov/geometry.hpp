#pragma once

// Geometry of the unit sphere and unit hyperbolic sphere in unified form:
// trigonometric functions selected by the curvature sign, the sigma-scalar
// product of the embedding space, geodesic distance, the manifold Green's
// function, and the reduced interaction kernel W with its closed-form
// Fourier transforms on the circle and on the line.
//
// Conventions fixed throughout the project:
//   circle:  g^(k)  = int_0^{2pi} g(x) e^{-ikx} dx,   inverse carries 1/(2pi)
//   line:    g^(xi) = int_R g(x) e^{-i xi x} dx,      inverse carries 1/(2pi)
// Under these, W^(k) = 1/|k| for odd k (0 for even k) and
// W^(xi) = tanh(|xi| pi/2) / (2|xi|).

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace geovlasov {

inline constexpr double pi = std::numbers::pi;

enum class Curvature : int { sphere = +1, hyperbolic = -1 };

inline constexpr int curvature_sign(Curvature c) { return static_cast<int>(c); }

inline std::string curvature_name(Curvature c)
{
    return c == Curvature::sphere ? "sphere" : "hyperbolic";
}

inline Curvature curvature_from_name(const std::string& name)
{
    if (name == "sphere")
        return Curvature::sphere;
    if (name == "hyperbolic")
        return Curvature::hyperbolic;
    throw std::invalid_argument("unknown manifold '" + name + "' (expected sphere|hyperbolic)");
}

namespace tol {
// constraint tolerance for points/vectors on the manifold
inline constexpr double constraint = 1e-12;
// inner products this far outside the principal inversion domain are clamped
inline constexpr double domain_clamp = 1e-9;
} // namespace tol

// ---------------------------------------------------------------------------
// unified trigonometry

/// sn x: sin x on the sphere, sinh x on the hyperbolic sphere.
inline double sn(double x, Curvature c)
{
    return c == Curvature::sphere ? std::sin(x) : std::sinh(x);
}

/// csn x: cos x on the sphere, cosh x on the hyperbolic sphere.
inline double csn(double x, Curvature c)
{
    return c == Curvature::sphere ? std::cos(x) : std::cosh(x);
}

/// Bundle of unified trig values; the rational pair is evaluated on demand so
/// the pole of ctn at sn x = 0 (and of tn at csn x = 0) only signals if used.
struct TrigValues {
    double sn;
    double csn;

    double tn() const
    {
        if (csn == 0.0)
            throw std::domain_error("tn: pole (csn x = 0)");
        return sn / csn;
    }
    double ctn() const
    {
        if (sn == 0.0)
            throw std::domain_error("ctn: pole (sn x = 0)");
        return csn / sn;
    }
};

inline TrigValues unified_trig(double x, Curvature c) { return {sn(x, c), csn(x, c)}; }

inline double tn(double x, Curvature c) { return unified_trig(x, c).tn(); }
inline double ctn(double x, Curvature c) { return unified_trig(x, c).ctn(); }

// ---------------------------------------------------------------------------
// ambient vectors and manifold points

/// Coordinate triple in the embedding space (R^3 or R^{2,1}).
struct Vec3 {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
    Vec3 operator-(const Vec3& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
    Vec3 operator*(double s) const { return {x1 * s, x2 * s, x3 * s}; }
    Vec3& operator+=(const Vec3& o)
    {
        x1 += o.x1;
        x2 += o.x2;
        x3 += o.x3;
        return *this;
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// sigma-scalar product a.b = a1 b1 + a2 b2 + sigma a3 b3.
inline double sdot(const Vec3& a, const Vec3& b, Curvature c)
{
    return a.x1 * b.x1 + a.x2 * b.x2 + curvature_sign(c) * a.x3 * b.x3;
}

/// Tangential part of w at x: w - sigma (x.w) x, valid for x.x = sigma.
inline Vec3 tangent_project(const Vec3& x, const Vec3& w, Curvature c)
{
    return w - double(curvature_sign(c)) * sdot(x, w, c) * x;
}

/// Rescale onto the constraint surface x.x = sigma (x3 > 0 branch for H^2).
inline Vec3 normalize_to_manifold(Vec3 v, Curvature c)
{
    const double q = sdot(v, v, c);
    const double s = curvature_sign(c);
    if (s * q <= 0.0)
        throw std::domain_error("normalize_to_manifold: vector not on the manifold's side of the cone");
    const Vec3 out = v * (1.0 / std::sqrt(s * q));
    if (c == Curvature::hyperbolic && out.x3 <= 0.0)
        throw std::domain_error("normalize_to_manifold: hyperbolic point must have x3 > 0");
    return out;
}

/// Validated point on the manifold: x.x = sigma to 1e-12. Far out on the
/// hyperbolic sheet the constraint is a cancellation of ~|x|^2 terms, so the
/// tolerance scales with the squared coordinate magnitude there (it stays
/// absolute on the sphere, where coordinates are O(1)).
class AmbientPoint {
public:
    AmbientPoint(double x1, double x2, double x3, Curvature c) : v_{x1, x2, x3}, c_(c)
    {
        const double s = curvature_sign(c_);
        const double scale = std::max(1.0, x1 * x1 + x2 * x2 + x3 * x3);
        if (std::abs(sdot(v_, v_, c_) - s) > tol::constraint * scale)
            throw std::invalid_argument("AmbientPoint: constraint x.x = sigma violated");
        if (c_ == Curvature::hyperbolic && v_.x3 <= 0.0)
            throw std::invalid_argument("AmbientPoint: hyperbolic sheet requires x3 > 0");
    }

    AmbientPoint(const Vec3& v, Curvature c) : AmbientPoint(v.x1, v.x2, v.x3, c) {}

    /// x(alpha, theta) = (sn a cos t, sn a sin t, csn a).
    static AmbientPoint from_angles(double alpha, double theta, Curvature c)
    {
        const double sa = sn(alpha, c);
        return AmbientPoint(sa * std::cos(theta), sa * std::sin(theta), csn(alpha, c), c);
    }

    const Vec3& coords() const { return v_; }
    Curvature manifold() const { return c_; }
    double x1() const { return v_.x1; }
    double x2() const { return v_.x2; }
    double x3() const { return v_.x3; }

private:
    Vec3 v_;
    Curvature c_;
};

/// Validated tangent vector: base.v = 0 under the sigma-product, to 1e-12
/// (scaled by the coordinate magnitudes, as for AmbientPoint).
class TangentVector {
public:
    TangentVector(const AmbientPoint& base, const Vec3& v) : base_(base), v_(v)
    {
        const Vec3& b = base.coords();
        const double bn = b.x1 * b.x1 + b.x2 * b.x2 + b.x3 * b.x3;
        const double vn = v.x1 * v.x1 + v.x2 * v.x2 + v.x3 * v.x3;
        const double scale = std::max(1.0, std::sqrt(bn * vn));
        if (std::abs(sdot(b, v, base.manifold())) > tol::constraint * scale)
            throw std::invalid_argument("TangentVector: not orthogonal to the base point");
    }

    const AmbientPoint& base() const { return base_; }
    const Vec3& components() const { return v_; }
    Curvature manifold() const { return base_.manifold(); }

    /// sigma-norm; real for genuine tangent vectors on both manifolds.
    double norm() const
    {
        return std::sqrt(std::abs(sdot(v_, v_, manifold())));
    }

private:
    AmbientPoint base_;
    Vec3 v_;
};

// local frame vectors at x(alpha, theta)
inline Vec3 e_alpha(double alpha, double theta, Curvature c)
{
    const double ca = csn(alpha, c);
    return {ca * std::cos(theta), ca * std::sin(theta), -double(curvature_sign(c)) * sn(alpha, c)};
}

inline Vec3 e_theta(double theta)
{
    return {-std::sin(theta), std::cos(theta), 0.0};
}

// ---------------------------------------------------------------------------
// distance, Green's function, interaction kernel

/// Geodesic distance d(a, b) = csn^{-1}(sigma a.b). Inner products within
/// 1e-9 of the principal domain are clamped; farther out is an error.
inline double geodesic_distance(const AmbientPoint& a, const AmbientPoint& b)
{
    if (a.manifold() != b.manifold())
        throw std::invalid_argument("geodesic_distance: points on different manifolds");
    const Curvature c = a.manifold();
    double u = curvature_sign(c) * sdot(a.coords(), b.coords(), c);
    if (c == Curvature::sphere) {
        if (u > 1.0 + tol::domain_clamp || u < -1.0 - tol::domain_clamp)
            throw std::domain_error("geodesic_distance: inner product outside [-1, 1]");
        u = std::clamp(u, -1.0, 1.0);
        return std::acos(u);
    }
    if (u < 1.0 - tol::domain_clamp)
        throw std::domain_error("geodesic_distance: hyperbolic inner product below 1");
    u = std::max(u, 1.0);
    return std::acosh(u);
}

/// Green's function (1/2pi) log ctn(d/2); singular at d = 0 (and d = pi on S^2).
inline double greens_function(double d, Curvature c)
{
    if (!(d > 0.0))
        throw std::domain_error("greens_function: requires d > 0");
    if (c == Curvature::sphere && !(d < pi))
        throw std::domain_error("greens_function: requires d < pi on the sphere");
    return std::log(ctn(0.5 * d, c)) / (2.0 * pi);
}

/// Reduced interaction kernel W(x) = (1/2pi) log |ctn(x/2)|.
/// Circle: even about 0 and about pi, singular at x = 0 and x = pi (mod 2pi).
/// Line: even, positive, singular at x = 0, decays like e^{-|x|}/pi.
inline double kernel_W(double x, Curvature c)
{
    if (c == Curvature::sphere) {
        double y = std::remainder(x, 2.0 * pi); // (-pi, pi]
        y = std::abs(y);
        if (y == 0.0 || y == pi)
            throw std::domain_error("kernel_W: singular argument on the circle");
        return std::log(std::abs(1.0 / std::tan(0.5 * y))) / (2.0 * pi);
    }
    const double y = std::abs(x);
    if (y == 0.0)
        throw std::domain_error("kernel_W: singular argument at 0");
    return std::log(1.0 / std::tanh(0.5 * y)) / (2.0 * pi);
}

/// Circle transform of W: 1/|k| for odd k, 0 for even k (including 0).
inline double kernel_fourier_circle(long long k)
{
    if (k % 2 == 0)
        return 0.0;
    return 1.0 / double(k < 0 ? -k : k);
}

/// Line transform of W: tanh(|xi| pi/2)/(2 |xi|), with limit pi/4 at xi = 0.
inline double kernel_fourier_line(double xi)
{
    const double a = std::abs(xi);
    if (a < 1e-8)
        return pi / 4.0 - pi * pi * pi * a * a / 48.0; // two-term Taylor
    return std::tanh(a * pi / 2.0) / (2.0 * a);
}

/// Tabulated kernel spectrum, circle modes or line frequencies.
struct KernelSpectrum {
    Curvature manifold;
    std::vector<std::pair<double, double>> values; // (k or xi, coefficient)
};

inline KernelSpectrum make_circle_spectrum(int kmax)
{
    if (kmax < 0)
        throw std::invalid_argument("make_circle_spectrum: kmax must be >= 0");
    KernelSpectrum s{Curvature::sphere, {}};
    for (int k = 0; k <= kmax; ++k)
        s.values.emplace_back(double(k), kernel_fourier_circle(k));
    return s;
}

inline KernelSpectrum make_line_spectrum(const std::vector<double>& xi)
{
    KernelSpectrum s{Curvature::hyperbolic, {}};
    for (double v : xi)
        s.values.emplace_back(v, kernel_fourier_line(v));
    return s;
}

} // namespace geovlasov
