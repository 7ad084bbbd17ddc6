#pragma once

// Natural cubic spline interpolation on a uniform grid, with zero extension
// outside the sample range. Used for the semi-Lagrangian velocity shifts,
// where the interpolated data is compactly supported well inside the grid.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace geovlasov {

class CubicSpline {
public:
    CubicSpline(double x0, double h, std::span<const double> y)
        : x0_(x0), h_(h)
    {
        if (h <= 0.0)
            throw std::invalid_argument("CubicSpline: step must be positive");
        if (y.size() < 4)
            throw std::invalid_argument("CubicSpline: need at least 4 samples");
        rebuild(y);
    }

    /// Refit to new samples on the same grid (reuses the workspace).
    void rebuild(std::span<const double> y)
    {
        const std::size_t n = y.size();
        y_.assign(y.begin(), y.end());
        m_.assign(n, 0.0);
        diag_.assign(n, 0.0);
        rhs_.assign(n, 0.0);

        // second derivatives m_i: tridiagonal (1 4 1) system, natural ends
        const double inv_h2 = 1.0 / (h_ * h_);
        for (std::size_t i = 1; i + 1 < n; ++i)
            rhs_[i] = 6.0 * (y_[i - 1] - 2.0 * y_[i] + y_[i + 1]) * inv_h2;

        diag_[1] = 4.0;
        for (std::size_t i = 2; i + 1 < n; ++i) {
            const double w = 1.0 / diag_[i - 1];
            diag_[i] = 4.0 - w;
            rhs_[i] -= w * rhs_[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            const double upper = (i + 2 < n) ? m_[i + 1] : 0.0;
            m_[i] = (rhs_[i] - upper) / diag_[i];
        }
    }

    /// Spline value; identically zero outside [x0, x0 + (n-1) h].
    double operator()(double x) const
    {
        const std::size_t n = y_.size();
        const double t_total = (x - x0_) / h_;
        if (t_total < 0.0 || t_total > double(n - 1))
            return 0.0;
        std::size_t i = std::size_t(t_total);
        if (i >= n - 1)
            i = n - 2;
        const double t = t_total - double(i);
        const double s = 1.0 - t;
        const double h2_6 = h_ * h_ / 6.0;
        return s * y_[i] + t * y_[i + 1]
             + h2_6 * ((s * s * s - s) * m_[i] + (t * t * t - t) * m_[i + 1]);
    }

    double x_min() const { return x0_; }
    double x_max() const { return x0_ + h_ * double(y_.size() - 1); }

private:
    double x0_;
    double h_;
    std::vector<double> y_;
    std::vector<double> m_;
    std::vector<double> diag_;
    std::vector<double> rhs_;
};

} // namespace geovlasov
