#include "doctest.h"

#include "amte/numerics.hpp"

#include <cmath>
#include <vector>

using namespace amte;

TEST_CASE("fornberg weights are exact on polynomials")
{
    const std::vector<double> x{-0.3, 0.1, 0.4, 0.9, 1.3, 2.0};
    const auto W = fornberg_weights(0.5, x, 3);
    auto f = [](double t) { return 2.0 - t + 3.0 * t * t - 0.5 * t * t * t + 0.25 * t * t * t * t; };
    auto d = [](double t, int k) {
        switch (k) {
        case 0: return 2.0 - t + 3.0 * t * t - 0.5 * t * t * t + 0.25 * t * t * t * t;
        case 1: return -1.0 + 6.0 * t - 1.5 * t * t + t * t * t;
        case 2: return 6.0 - 3.0 * t + 3.0 * t * t;
        default: return -3.0 + 6.0 * t;
        }
    };
    for (int k = 0; k <= 3; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += W(static_cast<Eigen::Index>(i), k) * f(x[i]);
        CHECK(s == doctest::Approx(d(0.5, k)).epsilon(1e-11));
    }
}

TEST_CASE("stencil start stays inside the grid")
{
    const auto xs = linspace(0.0, 1.0, 11);
    CHECK(stencil_start(xs, 0.0, 5) == 0);
    CHECK(stencil_start(xs, 1.0, 5) == 6);
    CHECK(stencil_start(xs, 0.5, 5) == 3);
}

TEST_CASE("local derivatives and interpolation")
{
    const auto xs = logspace(1e-2, 10.0, 120);
    std::vector<double> fs;
    for (double x : xs)
        fs.push_back(std::sin(x));
    const auto d = local_derivatives(xs, fs, 2.3, 2);
    CHECK(d(0) == doctest::Approx(std::sin(2.3)).epsilon(1e-9));
    CHECK(d(1) == doctest::Approx(std::cos(2.3)).epsilon(1e-7));
    CHECK(d(2) == doctest::Approx(-std::sin(2.3)).epsilon(1e-5));
    CHECK(local_interpolate(xs, fs, 0.77) == doctest::Approx(std::sin(0.77)).epsilon(1e-10));
}

TEST_CASE("cumulative integral of sampled data")
{
    const auto xs = linspace(0.0, 2.0, 81);
    std::vector<double> fs;
    for (double x : xs)
        fs.push_back(std::exp(x));
    const auto F = cumulative_integral(xs, fs);
    CHECK(F.front() == 0.0);
    for (std::size_t i = 0; i < xs.size(); i += 10)
        CHECK(F[i] == doctest::Approx(std::exp(xs[i]) - 1.0).epsilon(1e-11));
}

TEST_CASE("richardson derivative orders 1 to 4")
{
    const ScalarFn f = [](double x) { return std::exp(0.5 * x); };
    for (int k = 1; k <= 4; ++k) {
        const auto e = richardson_derivative(f, 1.2, k, 0.1);
        CHECK(e.value == doctest::Approx(std::pow(0.5, k) * std::exp(0.6)).epsilon(1e-7));
    }
}

TEST_CASE("adaptive quadrature")
{
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    double err = 1.0;
    const double v = integrate([](double x) { return std::exp(-x) * std::cos(x); }, 0.0, 40.0, 1e-13, &err);
    CHECK(v == doctest::Approx(0.5 * (1.0 - std::exp(-40.0) * (std::cos(40.0) - std::sin(40.0)))).epsilon(1e-13));
    CHECK(err < 1e-10);
    // integrable endpoint singularity
    CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("chebyshev collocation")
{
    const Chebyshev c(16, 1.0, 1.3);
    CHECK(c.nodes()(0) == doctest::Approx(1.0));
    CHECK(c.nodes()(c.nodes().size() - 1) == doctest::Approx(1.3));
    const auto v = c.sample([](double x) { return x * x * x; });
    const Eigen::VectorXd dv = c.diff() * v;
    const Eigen::VectorXd iv = c.cumint() * v;
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        const double x = c.nodes()(j);
        CHECK(dv(j) == doctest::Approx(3.0 * x * x).epsilon(1e-11));
        CHECK(iv(j) == doctest::Approx((std::pow(x, 4) - 1.0) / 4.0).epsilon(1e-12));
    }
    CHECK(c.eval(v, 1.17) == doctest::Approx(std::pow(1.17, 3)).epsilon(1e-13));
    CHECK(c.eval(v, 1.17, 2) == doctest::Approx(6.0 * 1.17).epsilon(1e-9));
}

TEST_CASE("linspace and logspace endpoints")
{
    const auto a = linspace(-1.0, 3.0, 5);
    CHECK(a == std::vector<double>{-1.0, 0.0, 1.0, 2.0, 3.0});
    const auto b = logspace(0.1, 100.0, 4);
    CHECK(b.front() == doctest::Approx(0.1));
    CHECK(b.back() == doctest::Approx(100.0));
}
