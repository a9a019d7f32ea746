#include "doctest.h"

#include "amte/errors.hpp"
#include "amte/negative_pair.hpp"
#include "amte/positive_pair.hpp"
#include "amte/reconstruct.hpp"
#include "amte/verify.hpp"

#include <cmath>

using namespace amte;

namespace {

struct Pieces {
    RadialProfile phi;
    RadialProfile psi;
    double R_inf = 0.0;
};

const Pieces& pieces()
{
    static const Pieces p = [] {
        Pieces out;
        const PhaseCurve c = extend_global(fixed_point_solve(2, 0.55, 1.05), 1e4);
        out.psi = rebuild_profile(c, 1.0, 1.0);
        out.R_inf = std::exp(*t_of_eta(c, 1.05).T_inf);
        out.phi = build_phi(PositivePairConfig{1.0, 1.0, 0.55}, default_phi_grid(12.0));
        return out;
    }();
    return p;
}

const SeparableSolution& solution()
{
    static const SeparableSolution s = assemble(pieces().phi, pieces().psi, 0, 0.55, pieces().R_inf);
    return s;
}

}  // namespace

TEST_CASE("radial evaluator reproduces a paraboloid")
{
    RadialProfile p;
    p.n = 2;
    for (double r : linspace(0.0, 3.0, 301)) {
        p.r.push_back(r);
        p.v.push_back(r);
        p.u.push_back(0.5 * r * r);
    }
    const RadialEvaluator ev(p);
    for (double r : {0.0, 0.013, 1.234, 2.9}) {
        const auto val = ev(r);
        CHECK(val.u == doctest::Approx(0.5 * r * r).epsilon(1e-12));
        CHECK(val.d1 == doctest::Approx(r).epsilon(1e-12));
        CHECK(val.d2 == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(ev(3.5), DomainError);
}

TEST_CASE("assembly sets opposite eigenvalues")
{
    const SeparableSolution& s = solution();
    CHECK(s.N == 3);
    CHECK(s.lambda_phi == doctest::Approx(0.55).epsilon(1e-4));
    CHECK(s.lambda_psi == doctest::Approx(-0.21436).epsilon(1e-4));
    CHECK(s.kappa == doctest::Approx(s.lambda_phi / -s.lambda_psi).epsilon(1e-12));
    CHECK(s.lambda_phi / s.kappa == doctest::Approx(-s.lambda_psi).epsilon(1e-12));
}

TEST_CASE("assembly rejects bad inputs")
{
    // two negative factors
    const NegativeOneD nd = negative_one_d(1.0, -1.0, 0.55);
    CHECK_THROWS_AS(assemble(nd.profile, pieces().psi, 0, 0.55, pieces().R_inf), SignError);
    CHECK_THROWS_AS(assemble(pieces().psi, pieces().phi, 0, 0.55, pieces().R_inf), Error);
    CHECK_THROWS_AS(assemble(pieces().phi, pieces().psi, 0, 0.7, pieces().R_inf), ParameterError);
}

TEST_CASE("sample points are reproducible and interior")
{
    const auto a = sample_points(solution(), 50, 3);
    const auto b = sample_points(solution(), 50, 3);
    const auto c = sample_points(solution(), 50, 4);
    REQUIRE(a.size() == 50);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        CHECK(a[i].size() == 3);
        CHECK(a[i].tail(2).norm() < 0.95 * solution().R_inf + 1e-12);
    }
    CHECK(a[0] != c[0]);
}

TEST_CASE("assembled residual and convexity")
{
    const auto pts = sample_points(solution(), 300, 7);
    const VerificationReport r = full_residual(solution(), pts);
    CHECK(r.points == 300);
    CHECK(r.residual_max < 1e-4);
    CHECK(r.residual_mean < r.residual_max);
    CHECK(r.convexity_margin > 0.0);
    CHECK(convexity_check(solution(), pts).min_eigenvalue == doctest::Approx(r.convexity_margin));
}

TEST_CASE("block contributions cancel")
{
    const auto pts = sample_points(solution(), 5, 9);
    for (const auto& X : pts) {
        const auto bc = block_contributions(solution(), X);
        REQUIRE(bc.size() >= 2);
        CHECK(std::abs(bc[0] + bc[1]) < 1e-4 * (std::abs(bc[0]) + std::abs(bc[1])));
        CHECK(std::abs(bc[0]) > 1e-3);
    }
}

TEST_CASE("mismatched amplitude is detected")
{
    SeparableSolution s = solution();
    s.kappa *= 1.1;
    const VerificationReport r = full_residual(s, sample_points(s, 100, 7));
    CHECK(r.residual_max > 1e-3);
}

TEST_CASE("cylinder factor leaves the residual unchanged")
{
    const SeparableSolution s1 = assemble(pieces().phi, pieces().psi, 1, 0.55, pieces().R_inf);
    CHECK(s1.N == 4);
    const auto p1 = sample_points(s1, 100, 5);
    std::vector<Eigen::VectorXd> p0;
    for (const auto& X : p1)
        p0.push_back(X.head(3));
    const auto r0 = full_residual(solution(), p0), r1 = full_residual(s1, p1);
    CHECK(std::abs(r0.residual_max - r1.residual_max) < 1e-6);
}

TEST_CASE("completeness")
{
    const CompletenessReport c = completeness_check(solution());
    CHECK(c.pass);
    CHECK(c.phi_side);
    CHECK(c.psi_side);
    CHECK(c.phi_slope > 0.0);
}

TEST_CASE("one-dimensional bernstein cases")
{
    for (double theta : {0.6, 1.0, 2.0}) {
        CAPTURE(theta);
        const auto r = bernstein_1d_check(theta);
        CHECK(r.pass);
        CHECK(r.cases.size() > 0);
    }
}

TEST_CASE("solution json round trip")
{
    const SeparableSolution& s = solution();
    const SeparableSolution t = solution_from_json(to_json(s));
    CHECK(t.kappa == s.kappa);
    CHECK(t.R_inf == s.R_inf);
    CHECK(t.N == s.N);
    CHECK(t.psi.r == s.psi.r);
    CHECK(t.phi.u == s.phi.u);
    CHECK_THROWS_AS(solution_from_json("{not json"), InputError);
}
