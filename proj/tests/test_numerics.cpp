#include "catch2/catch_amalgamated.hpp"

#include "geovlasov/fft.hpp"
#include "geovlasov/quadrature.hpp"
#include "geovlasov/spline.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace geovlasov;
using Catch::Approx;

constexpr double pi = std::numbers::pi;

TEST_CASE("fft matches the naive DFT on power-of-two and odd sizes")
{
    std::mt19937 gen(11);
    std::normal_distribution<double> g(0.0, 1.0);
    for (const std::size_t n : {std::size_t(8), std::size_t(12), std::size_t(10),
                                std::size_t(128), std::size_t(81)}) {
        std::vector<cplx> a(n);
        for (auto& z : a)
            z = cplx{g(gen), g(gen)};
        auto fwd = a;
        fft_inplace(fwd, false);
        const auto ref = oracles::naive_dft(a, false);
        for (std::size_t k = 0; k < n; ++k)
            REQUIRE(std::abs(fwd[k] - ref[k]) < 1e-10);
        auto back = fwd;
        fft_inplace(back, true);
        for (std::size_t k = 0; k < n; ++k)
            REQUIRE(std::abs(back[k] - a[k]) < 1e-12);
    }
}

TEST_CASE("fft Parseval identity")
{
    std::mt19937 gen(13);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> a(64);
    for (auto& z : a)
        z = cplx{g(gen), g(gen)};
    double time_energy = 0.0;
    for (const auto& z : a)
        time_energy += std::norm(z);
    auto f = a;
    fft_inplace(f, false);
    double freq_energy = 0.0;
    for (const auto& z : f)
        freq_energy += std::norm(z);
    CHECK(freq_energy / double(a.size()) == Approx(time_energy).epsilon(1e-13));
}

TEST_CASE("signed mode ordering")
{
    CHECK(signed_mode(0, 8) == 0);
    CHECK(signed_mode(3, 8) == 3);
    CHECK(signed_mode(4, 8) == 4);
    CHECK(signed_mode(5, 8) == -3);
    CHECK(signed_mode(7, 8) == -1);
}

TEST_CASE("cubic spline interpolates nodes and linear data exactly")
{
    std::vector<double> y(32);
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = 0.7 * double(i) - 3.0;
    CubicSpline s(-1.0, 0.25, y);
    for (std::size_t i = 0; i < y.size(); ++i)
        REQUIRE(s(-1.0 + 0.25 * double(i)) == Approx(y[i]).margin(1e-13));
    // linear functions are reproduced between nodes by the natural spline
    CHECK(s(0.1) == Approx(0.7 * (0.1 + 1.0) / 0.25 - 3.0).margin(1e-12));
}

TEST_CASE("cubic spline shifted-Gaussian accuracy and zero extension")
{
    const double V = 8.0, h = 1.0 / 16.0;
    const int n = int(2 * V / h) + 1;
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        const double v = -V + h * double(i);
        y[i] = std::exp(-0.5 * v * v);
    }
    CubicSpline s(-V, h, y);
    const double shift = 0.1;
    double linf = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = -V + h * double(i);
        const double exact = std::exp(-0.5 * (v - shift) * (v - shift));
        linf = std::max(linf, std::abs(s(v - shift) - exact));
    }
    CHECK(linf < 1e-6);
    CHECK(s(-V - 1e-9) == 0.0);
    CHECK(s(V + 1e-9) == 0.0);

    // constant shifts preserve the discrete sum of compact data
    double sum0 = 0.0, sum1 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = -V + h * double(i);
        sum0 += y[i];
        sum1 += s(v - shift);
    }
    CHECK(sum1 == Approx(sum0).epsilon(1e-12));
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly")
{
    const auto rule = gauss_legendre(8);
    double wsum = 0.0;
    for (double w : rule.weights)
        wsum += w;
    CHECK(wsum == Approx(2.0).margin(1e-14));
    for (int p = 0; p <= 15; ++p) {
        double q = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            q += rule.weights[i] * std::pow(rule.nodes[i], p);
        const double exact = (p % 2 == 1) ? 0.0 : 2.0 / double(p + 1);
        REQUIRE(q == Approx(exact).margin(1e-13));
    }
    const auto mapped = gauss_legendre(64, 0.0, pi);
    double s = 0.0;
    for (std::size_t i = 0; i < mapped.nodes.size(); ++i)
        s += mapped.weights[i] * std::sin(mapped.nodes[i]);
    CHECK(s == Approx(2.0).margin(1e-13));
}

TEST_CASE("adaptive quadrature on smooth and endpoint-singular integrands")
{
    CHECK(integrate([](double x) { return std::cos(x) * std::cos(x); }, 0.0, 2.0 * pi)
          == Approx(pi).margin(1e-12));
    CHECK(integrate_endpoint_singular([](double x) { return std::log(x); }, 0.0, 1.0)
          == Approx(-1.0).margin(1e-12));
    CHECK(integrate_endpoint_singular([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0)
          == Approx(2.0).margin(1e-10));
}
