#include "doctest.h"

#include "amte/core.hpp"
#include "amte/errors.hpp"
#include "amte/negative_pair.hpp"
#include "amte/reconstruct.hpp"

#include <cmath>

using namespace amte;

namespace {

const PhaseCurve& reference_curve(double eta_max)
{
    static const LocalSolve L = fixed_point_solve(2, 0.55, 1.05);
    static const PhaseCurve c3 = extend_global(L, 1e3);
    static const PhaseCurve c4 = extend_global(L, 1e4);
    return eta_max > 1e3 ? c4 : c3;
}

// zeta = 2(eta-1) is the phase curve of v = r e^{r^2}
PhaseCurve gaussian_curve(double eta0)
{
    PhaseCurve c;
    c.params = {2, 0.55, 0.0, eta0};
    for (double x : logspace(1e-8, 18.0, 800)) {
        const double eta = 1.0 + x;
        c.samples.push_back({eta, 2.0 * x, (eta - eta0) / 2.0 + std::log(x / (eta0 - 1.0))});
    }
    c.eta_max = c.samples.back().eta;
    return c;
}

}  // namespace

TEST_CASE("analytic reconstruction recovers v up to a constant")
{
    const double eta0 = 1.5, r0 = std::sqrt((eta0 - 1.0) / 2.0);
    const PhaseCurve c = gaussian_curve(eta0);
    const TimeSamples ts = t_of_eta(c, eta0);
    const auto grid = linspace(0.0, 2.5, 251);
    const RadialProfile p = rebuild_profile(ts, 2, 1.0, r0, grid);
    for (std::size_t i = 1; i < p.size(); ++i) {
        const double r = p.r[i];
        const double v = (r / r0) * std::exp(r * r - r0 * r0);
        const double u = (std::exp(r * r) - 1.0) * std::exp(-r0 * r0) / (2.0 * r0);
        CHECK(p.v[i] == doctest::Approx(v).epsilon(1e-6));
        CHECK(p.u[i] == doctest::Approx(u).epsilon(1e-6));
    }
    const auto x = etabar_minus_one(ts, std::vector<double>{0.3, r0, 1.0}, r0);
    CHECK(x[0] == doctest::Approx(2.0 * 0.09).epsilon(1e-8));
    CHECK(x[1] == doctest::Approx(eta0 - 1.0).epsilon(1e-10));
    CHECK(x[2] == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("round trip through profile_to_phase")
{
    const PhaseCurve& c = reference_curve(1e3);
    const RadialProfile p = rebuild_profile(c, 1.0, 1.0);
    const auto etas = c.etas(), zetas = c.zetas();
    double worst = 0.0;
    for (const auto& q : profile_to_phase(p))
        if (q.eta >= 1.1 && q.eta <= c.eta_max / 2.0)
            worst = std::max(worst, std::abs(q.zeta / local_interpolate(etas, zetas, q.eta) - 1.0));
    CHECK(worst < 1e-5);
}

TEST_CASE("scaling covariance")
{
    const PhaseCurve& c = reference_curve(1e3);
    const RadialProfile a = rebuild_profile(c, 1.0, 1.0);
    const RadialProfile b = rebuild_profile(c, 3.0, 1.0);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(b.v[i] == doctest::Approx(3.0 * a.v[i]).epsilon(1e-13));
        CHECK(b.u[i] == doctest::Approx(3.0 * a.u[i]).epsilon(1e-13));
    }
}

TEST_CASE("anchoring and blow-up radius")
{
    const PhaseCurve& c = reference_curve(1e3);
    const TimeSamples ts = t_of_eta(c, 1.05);
    REQUIRE(ts.T_inf.has_value());
    CHECK(*ts.T_inf == doctest::Approx(1.5420174).epsilon(1e-6));
    const TimePoint tp = evaluate_at(ts, 0.0);
    CHECK(tp.x == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(tp.I == doctest::Approx(0.0).epsilon(1e-12));
    // deep in the local regime eta - 1 ~ e^{2t}
    const TimePoint a = evaluate_at(ts, -12.0), b = evaluate_at(ts, -13.0);
    CHECK(a.x / b.x == doctest::Approx(std::exp(2.0)).epsilon(1e-3));
    CHECK_THROWS_AS(evaluate_at(ts, *ts.T_inf + 1.0), DomainError);
}

TEST_CASE("origin bound")
{
    const TimeSamples ts = t_of_eta(reference_curve(1e3), 1.05);
    const OriginBound ob = origin_bound_scan(ts);
    CHECK(ob.holds);
    CHECK(ob.C == doctest::Approx(0.04757).epsilon(1e-3));
    CHECK(ob.C_alpha <= ob.C * 1.0001);
}

TEST_CASE("rebuilt profile solves the negative eigen-equation")
{
    const PhaseCurve& c = reference_curve(1e3);
    const RadialProfile p = rebuild_profile(c, 1.0, 1.0);
    FitOptions fo;
    fo.r_max = 0.9 * std::exp(1.5420174);
    const LambdaFit fit = effective_lambda_fit(p, 0.55, 2, fo);
    CHECK(fit.lambda_prime == doctest::Approx(c.params.lambda3).epsilon(1e-5));
    CHECK(fit.eigenvalue < 0.0);
}

TEST_CASE("degenerate branch")
{
    const auto grid = linspace(0.0, 2.0, 21);
    const RadialProfile p = rebuild_degenerate(3, 2.0, 0.5, grid);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p.v[i] == doctest::Approx(4.0 * p.r[i]));
        CHECK(p.u[i] == doctest::Approx(2.0 * p.r[i] * p.r[i]));
    }
}

TEST_CASE("logarithmic divergence at the boundary")
{
    const PhaseCurve& c = reference_curve(1e4);
    const TimeSamples ts = t_of_eta(c, 1.05);
    const RadialProfile p = rebuild_profile(c, 1.0, 1.0);
    const DivergenceTest div = boundary_divergence(p, std::exp(*ts.T_inf));
    CHECK(div.divergent);
    CHECK(div.ratio.back() > 0.9);

    // graded towards r = 1 so that every tested distance is resolved
    std::vector<double> rs = linspace(0.0, 0.9, 901);
    const auto d = logspace(1e-10, 0.1, 3000);
    for (auto it = d.rbegin() + 1; it != d.rend(); ++it)
        rs.push_back(1.0 - *it);

    // a profile with a finite limit at R = 1: u = 1 - sqrt(1 - r^2)
    RadialProfile f;
    f.n = 2;
    for (double r : rs) {
        f.r.push_back(r);
        f.v.push_back(r / std::sqrt(1.0 - r * r));
        f.u.push_back(1.0 - std::sqrt(1.0 - r * r));
    }
    CHECK_FALSE(boundary_divergence(f, 1.0).divergent);
    // a log-divergent profile at R = 1: u = -log(1 - r^2)
    RadialProfile g;
    g.n = 2;
    for (double r : rs) {
        g.r.push_back(r);
        g.v.push_back(2.0 * r / (1.0 - r * r));
        g.u.push_back(-std::log(1.0 - r * r));
    }
    CHECK(boundary_divergence(g, 1.0).divergent);
}

TEST_CASE("large condition report")
{
    const PhaseCurve& c = reference_curve(1e4);
    const TimeSamples ts = t_of_eta(c, 1.05);
    const RadialProfile p = rebuild_profile(c, 1.0, 1.0);
    const LargeConditionReport r = large_condition_check(p, std::exp(*ts.T_inf));
    CHECK(r.pass);
    CHECK(r.finite_boundary);
    CHECK(r.decades_to_ceiling > 0.0);
    CHECK(large_condition_check(p, INFINITY).pass);
}

TEST_CASE("input errors")
{
    PhaseCurve tiny;
    tiny.samples = {{1.1, 0.2, 0.0}, {1.2, 0.4, 0.1}};
    CHECK_THROWS_AS(t_of_eta(tiny, 1.1), InputError);
    CHECK_THROWS_AS(t_of_eta(reference_curve(1e3), 2e3), DomainError);
}
