#pragma once

// Complex discrete Fourier transform: iterative radix-2 with a Bluestein
// fallback for non-power-of-two sizes. Forward convention
//   A_k = sum_j a_j e^{-2*pi*i*j*k/n},
// the inverse carries the 1/n factor. Transforms of every size used by the
// solvers (grid sizes and their zero-padded doubles) go through the radix-2
// path; Bluestein only runs for odd sizes requested through the CLI.

#include <bit>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace geovlasov {

using cplx = std::complex<double>;

namespace detail {

inline void fft_radix2(std::vector<cplx>& a, bool inverse)
{
    const std::size_t n = a.size();
    if (n < 2)
        return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    const double sgn = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const double ang = sgn * std::numbers::pi / double(half);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const cplx w = std::polar(1.0, ang * double(k));
                const cplx u = a[i + k];
                const cplx t = a[i + k + half] * w;
                a[i + k] = u + t;
                a[i + k + half] = u - t;
            }
        }
    }
}

inline void fft_bluestein(std::vector<cplx>& a)
{
    const std::size_t n = a.size();
    std::size_t m = 1;
    while (m < 2 * n - 1)
        m <<= 1;

    // chirp c_j = e^{-i*pi*j^2/n}; j^2 reduced mod 2n keeps the angle small
    std::vector<cplx> chirp(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t r = (j * j) % (2 * n);
        chirp[j] = std::polar(1.0, -std::numbers::pi * double(r) / double(n));
    }

    std::vector<cplx> u(m, cplx{0.0, 0.0});
    std::vector<cplx> w(m, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j)
        u[j] = a[j] * chirp[j];
    for (std::size_t j = 0; j < n; ++j) {
        w[j] = std::conj(chirp[j]);
        if (j != 0)
            w[m - j] = std::conj(chirp[j]);
    }

    fft_radix2(u, false);
    fft_radix2(w, false);
    for (std::size_t j = 0; j < m; ++j)
        u[j] *= w[j];
    fft_radix2(u, true);

    const double scale = 1.0 / double(m);
    for (std::size_t j = 0; j < n; ++j)
        a[j] = u[j] * scale * chirp[j];
}

} // namespace detail

/// In-place DFT of any size n >= 1. The inverse transform divides by n.
inline void fft_inplace(std::vector<cplx>& a, bool inverse = false)
{
    const std::size_t n = a.size();
    if (n == 0)
        throw std::invalid_argument("fft_inplace: empty input");
    if (n == 1)
        return;

    if (std::has_single_bit(n)) {
        detail::fft_radix2(a, inverse);
    } else if (!inverse) {
        detail::fft_bluestein(a);
    } else {
        for (auto& z : a)
            z = std::conj(z);
        detail::fft_bluestein(a);
        for (auto& z : a)
            z = std::conj(z);
    }
    if (inverse) {
        const double scale = 1.0 / double(n);
        for (auto& z : a)
            z *= scale;
    }
}

/// Signed mode number of DFT bin j on an n-point grid (j <= n/2 maps to +j).
inline long long signed_mode(std::size_t j, std::size_t n)
{
    return (j <= n / 2) ? (long long)j : (long long)j - (long long)n;
}

} // namespace geovlasov
