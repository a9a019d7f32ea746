#include "doctest.h"

#include "amte/errors.hpp"
#include "amte/numerics.hpp"
#include "amte/phase_plane.hpp"

#include <cmath>

using namespace amte;

TEST_CASE("phase right side")
{
    const ModelParams p{2, 0.55, -0.39, 1.05};
    const auto d = phase_rhs(1.5, 0.8, 0.3, p);
    CHECK(d.dzeta == doctest::Approx(phase_dzeta(1.5, 0.8, 0.3, 2, 0.55, -0.39)));
    CHECK(d.dI == doctest::Approx(2.5 / 0.8));
    // direct evaluation of the formula
    const double A = (4 * 0.55 - 3) * 1.5 - (4 * 0.55 - 1);
    const double g = 2 * 1.5 * 0.5 * ((2 * 0.55 - 1) * 1.5 - (2 * 0.55 - 1));
    const double expect = 1.55 * 0.8 / 1.5 + A + (g + 0.39 * 2.25 * std::exp(0.3)) / 0.8;
    CHECK(d.dzeta == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(phase_rhs(1.5, 0.0, 0.0, p), DomainError);
}

TEST_CASE("stationary points of the homogeneous equation")
{
    // n = 4, theta = 5/6: n theta - (n-1) = 1/3, n theta - 1 = 7/3, root eta = 7
    const auto s = stationary_eta(4, 5.0 / 6.0);
    bool has7 = false;
    for (double e : s)
        has7 = has7 || std::abs(e - 7.0) < 1e-12;
    CHECK(has7);
    for (double e : s)
        CHECK(std::abs(zero_order(e, 4, 5.0 / 6.0)) < 1e-12);
}

TEST_CASE("radial bernstein check examples")
{
    CHECK(bernstein_radial_check(3, 1.0, {1.0, 1.05}, 50).pass);
    CHECK(bernstein_radial_check(3, 0.6, {0.95, 1.0}, 50).pass);
    const auto r = bernstein_radial_check(4, 5.0 / 6.0, {6.9, 7.1}, 50);
    CHECK(r.status == BernsteinStatus::stationary_crossing);
    CHECK(to_string(r.status) == "stationary_crossing");
    CHECK_THROWS_AS(bernstein_radial_check(2, 0.6, {1.0, 1.05}, 50), ParameterError);
    CHECK_THROWS_AS(bernstein_radial_check(3, 0.6, {1.05, 1.05}, 50), ParameterError);
}

TEST_CASE("radial bernstein lattice")
{
    for (int n : {3, 4, 5})
        for (double theta : {0.6, 0.75, 1.0, 1.5}) {
            CAPTURE(n);
            CAPTURE(theta);
            const auto r = bernstein_radial_check(n, theta, {1.0, 1.05}, 50);
            CHECK(r.pass);
            CHECK(r.witnesses.size() > 0);
            for (const auto& w : r.witnesses)
                CHECK(w.forced_sign != 0);
        }
}

TEST_CASE("forced phi' is bounded on both branches")
{
    for (int branch : {1, -1}) {
        const double d = forced_phi_prime(1.02, 0.3, 3, 0.75, branch);
        CHECK(std::isfinite(d));
    }
}

TEST_CASE("power solutions")
{
    const auto nodes = linspace(0.2, 3.0, 29);
    for (int k : {2, 3}) {
        const double theta = (2.0 * k + 1.0) / (2.0 * k + 2.0);
        for (const auto& r : power_solution_residual(k, theta, 1.5, nodes))
            CHECK(r.relative() < 1e-6);
    }
    CHECK_THROWS_AS(power_solution_residual(2, 0.6, 1.0, nodes), ParameterError);
    CHECK_THROWS_AS(power_solution_residual(1, 0.75, 1.0, nodes), ParameterError);
}

TEST_CASE("bernstein json report")
{
    const auto js = to_json(bernstein_radial_check(3, 1.0, {1.0, 1.05}, 10));
    CHECK(js.find("\"witnesses\"") != std::string::npos);
    CHECK(js.find("\"pass\": true") != std::string::npos);
}
