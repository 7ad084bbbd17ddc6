#pragma once

// Homogeneous velocity profiles f0(v) as Gaussian mixtures, with closed-form
// derivative, Fourier transform (convention f0^(eta) = int f0 e^{-i eta v} dv)
// and mass. Covers the Maxwellian and symmetric two-stream families used by
// the linear-stability toolkit.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace geovlasov {

struct GaussianTerm {
    double mass;
    double center;
    double width;
};

class EquilibriumProfile {
public:
    explicit EquilibriumProfile(std::vector<GaussianTerm> terms) : terms_(std::move(terms))
    {
        if (terms_.empty())
            throw std::invalid_argument("EquilibriumProfile: no components");
        for (const auto& t : terms_) {
            if (!(t.mass > 0.0))
                throw std::invalid_argument("EquilibriumProfile: component mass must be > 0");
            if (!(t.width > 0.0))
                throw std::invalid_argument("EquilibriumProfile: component width must be > 0");
        }
    }

    static EquilibriumProfile maxwellian(double mass, double center = 0.0, double width = 1.0)
    {
        return EquilibriumProfile({{mass, center, width}});
    }

    /// Symmetric pair of half-mass Maxwellians at +-separation.
    static EquilibriumProfile two_stream(double separation, double mass, double width = 1.0)
    {
        return EquilibriumProfile(
            {{0.5 * mass, -separation, width}, {0.5 * mass, separation, width}});
    }

    double value(double v) const
    {
        double s = 0.0;
        for (const auto& t : terms_) {
            const double z = (v - t.center) / t.width;
            s += t.mass * std::exp(-0.5 * z * z) / (t.width * root_2pi);
        }
        return s;
    }

    double derivative(double v) const
    {
        double s = 0.0;
        for (const auto& t : terms_) {
            const double z = (v - t.center) / t.width;
            s += -t.mass * z * std::exp(-0.5 * z * z) / (t.width * t.width * root_2pi);
        }
        return s;
    }

    /// Holomorphic extension of f0' (Gaussian mixtures are entire); used by
    /// the Landau-continuation term of the Laplace-transformed kernel.
    std::complex<double> derivative_complex(std::complex<double> v) const
    {
        std::complex<double> s{0.0, 0.0};
        for (const auto& t : terms_) {
            const std::complex<double> z = (v - t.center) / t.width;
            s += -t.mass * z * std::exp(-0.5 * z * z) / (t.width * t.width * root_2pi);
        }
        return s;
    }

    double second_derivative(double v) const
    {
        double s = 0.0;
        for (const auto& t : terms_) {
            const double z = (v - t.center) / t.width;
            s += t.mass * (z * z - 1.0) * std::exp(-0.5 * z * z)
                 / (t.width * t.width * t.width * root_2pi);
        }
        return s;
    }

    /// f0^(eta) = sum_j m_j e^{-i eta c_j} e^{-eta^2 w_j^2 / 2}; f0^(0) = mass.
    std::complex<double> fourier(double eta) const
    {
        std::complex<double> s{0.0, 0.0};
        for (const auto& t : terms_)
            s += t.mass * std::exp(-0.5 * eta * eta * t.width * t.width)
                 * std::polar(1.0, -eta * t.center);
        return s;
    }

    double mass() const
    {
        double s = 0.0;
        for (const auto& t : terms_)
            s += t.mass;
        return s;
    }

    /// f0 vanishes (below ~1e-42) outside |v| <= support_radius().
    double support_radius() const
    {
        double r = 0.0;
        for (const auto& t : terms_)
            r = std::max(r, std::abs(t.center) + 14.0 * t.width);
        return r;
    }

    /// True when the profile is symmetric about 0 (real Fourier transform).
    bool even() const
    {
        for (const auto& a : terms_) {
            bool matched = false;
            for (const auto& b : terms_) {
                if (std::abs(a.center + b.center) < 1e-14 && std::abs(a.mass - b.mass) < 1e-14
                    && std::abs(a.width - b.width) < 1e-14) {
                    matched = true;
                    break;
                }
            }
            if (!matched)
                return false;
        }
        return true;
    }

    /// Numerical check of the tail hypothesis |f0'(v)| <= C/|v|: returns the
    /// supremum of |v f0'(v)| sampled on a log grid v in [v_from, v_to].
    double derivative_tail_constant(double v_from = 1.0, double v_to = 1e6, int samples = 200) const
    {
        if (!(v_from > 0.0) || !(v_to > v_from))
            throw std::invalid_argument("derivative_tail_constant: bad sample range");
        double c = 0.0;
        const double ratio = std::log(v_to / v_from);
        for (int i = 0; i < samples; ++i) {
            const double v = v_from * std::exp(ratio * double(i) / double(samples - 1));
            c = std::max(c, std::abs(v * derivative(v)));
            c = std::max(c, std::abs(v * derivative(-v)));
        }
        return c;
    }

    const std::vector<GaussianTerm>& components() const { return terms_; }

private:
    static constexpr double root_2pi = 2.5066282746310005024;
    std::vector<GaussianTerm> terms_;
};

} // namespace geovlasov
