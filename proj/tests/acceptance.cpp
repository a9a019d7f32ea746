// Acceptance run: one line per criterion, exit status 1 if any criterion fails.

#include "amte/core.hpp"
#include "amte/errors.hpp"
#include "amte/negative_pair.hpp"
#include "amte/numerics.hpp"
#include "amte/phase_plane.hpp"
#include "amte/positive_pair.hpp"
#include "amte/reconstruct.hpp"
#include "amte/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace amte;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

struct Shared {
    LocalSolve local;
    PhaseCurve curve_1e3;
    PhaseCurve curve_1e4;
};

const Shared& shared()
{
    static const Shared s = [] {
        Shared out;
        out.local = fixed_point_solve(2, 0.55, 1.05);
        out.curve_1e3 = extend_global(out.local, 1e3);
        out.curve_1e4 = extend_global(out.local, 1e4);
        return out;
    }();
    return s;
}

double max_rel(const std::vector<double>& a, const std::vector<double>& b)
{
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        e = std::max(e, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
    return e;
}

void criterion_taylor(Outcome& o)
{
    const double a34 = taylor_coeffs(2, 0.75).alpha;
    const double a55 = taylor_coeffs(2, 0.55).alpha;
    o.detail << "alpha(2,3/4)=" << a34 << " alpha(2,0.55)=" << a55;
    o.require(std::abs(a34 - 14.0 / 3.0) < 1e-12, "alpha(2,3/4) = 14/3");
    o.require(std::abs(a55 - 62.0 / 15.0) < 1e-12, "alpha(2,0.55) = 4.1333...");
}

void criterion_calibration(Outcome& o)
{
    // phi = 2(eta-1): (eta+1)/phi - 1/(eta-1) = 1/2, so e^{I} phi^{-1} -> e^{-x0/2}/(2 x0) at eta = 1.
    const double eta0 = 1.1, x0 = eta0 - 1.0;
    const Chebyshev grid(16, 1.0, eta0);
    const Candidate phi = Candidate::sample(grid, [](double e) { return 2.0 * (e - 1.0); });
    const double lam = calibrate_lambda(phi, 2);
    const double oracle = 8.0 * x0 * std::exp(x0 / 2.0);
    o.detail << "lambda=" << lam << " oracle=" << oracle;
    o.require(std::abs(lam - oracle) < 1e-8, "lambda matches closed form");
    for (int n : {2, 3}) {
        const Calibration cal = calibrate(phi, n);
        const double prod = calibration_product(phi, cal, 1.0 + 1e-9);
        const double target = 4.0 + n * (n - 2) / 2.0;
        o.detail << " product(n=" << n << ")=" << prod;
        o.require(std::abs(prod - target) < 1e-6, "limiting product for n=" + std::to_string(n));
    }
}

void criterion_fixed_point(Outcome& o)
{
    const LocalSolve& L = shared().local;
    const double fin = L.contraction_history.empty() ? INFINITY : L.contraction_history.back();
    double res = 0.0;
    for (const auto& r : phase_residual(shared().curve_1e3))
        res = std::max(res, r.relative());
    const double d1 = L.zeta(1.0, 1), d2 = L.zeta(1.0, 2);
    const double alpha0 = taylor_coeffs(2, 0.55).alpha;
    o.detail << "iterations=" << L.iterations << " change=" << fin << " residual=" << res
             << " zeta'(1)=" << d1 << " zeta''(1)=" << d2;
    o.require(L.iterations <= 200 && fin < 1e-8, "sup-norm change < 1e-8");
    o.require(res < 1e-6, "phase residual < 1e-6");
    o.require(std::abs(d1 - 2.0) < 1e-4, "zeta'(1) = 2");
    o.require(std::abs(d2 - alpha0) < 1e-2, "zeta''(1) = alpha0");
}

void report_bounds(Outcome& o, const GrowthReport& g, const char* tag)
{
    o.detail << ' ' << tag << ":";
    for (const auto& b : g.bounds)
        o.detail << " {" << b.id << (b.holds ? " holds" : " fails") << " margin " << b.margin << "}";
    o.detail << " eta2=" << (g.eta2 ? std::to_string(*g.eta2) : std::string("none"));
}

void criterion_bounds(Outcome& o)
{
    const GrowthReport g = growth_bounds_check(shared().curve_1e3, 2, 0.55);
    const GrowthReport g4 = growth_bounds_check(shared().curve_1e4, 2, 0.55);
    o.detail << "rho=" << g.rho << " eps0=" << g.eps0 << " eta1=" << g.eta1;
    report_bounds(o, g, "eta_max=1e3");
    report_bounds(o, g4, "eta_max=1e4");
    report_bounds(o, growth_bounds_check(extend_global(shared().local, 1e6), 2, 0.55), "eta_max=1e6");
    for (const char* id : {"zeta >= rho*(eta-1)", "zeta > eps0*eta^2", "zeta <= eta^2"}) {
        const BoundEntry* b = g.find(id);
        o.require(b && b->holds && b->margin > 0.0, id);
    }
}

void criterion_blowup(Outcome& o)
{
    const BlowupTime b1 = blowup_time(shared().curve_1e3, 1.05);
    const BlowupTime b2 = blowup_time(extend_global(shared().local, 2e3), 1.05);
    const double moved = std::abs(b2.T_inf - b1.T_inf);
    o.detail << "T_inf=" << b1.T_inf << " tail=" << b1.tail_bound << " T_inf(2e3)=" << b2.T_inf
             << " moved=" << moved;
    o.require(std::isfinite(b1.T_inf), "T_inf finite");
    o.require(b1.tail_bound < 1e-3 * b1.T_inf, "tail < 1e-3 T_inf");
    o.require(moved < b1.tail_bound, "doubling moves T_inf by less than the tail");
}

void criterion_positive(Outcome& o)
{
    for (auto [theta, lambda] : {std::pair{0.55, 1.0}, std::pair{0.75, 0.05}}) {
        const PositivePairConfig cfg{1.0, lambda, theta};
        const auto grid = default_phi_grid(12.0);
        const PairSamples q = sample_phi(cfg, grid);
        std::vector<double> g10;
        for (double r : grid)
            if (r <= 10.0)
                g10.push_back(r);
        const PairSamples d = integrate_direct(cfg, g10);
        double agree = 0.0;
        for (std::size_t i = 0; i < g10.size(); ++i)
            agree = std::max({agree, std::abs(d.v_upp[i] - q.v_upp[i]), std::abs(d.v_up[i] - q.v_up[i]),
                              std::abs(d.u[i] - q.u[i])});
        const RadialProfile p = q.profile();
        const OriginDerivatives od = origin_derivatives(p);
        bool odd = true;
        for (int k : {0, 2, 4})
            odd = odd && std::abs(od.d[k]) <= od.tol[k];
        const LambdaFit fit = effective_lambda_fit(p, theta, 1);
        const double rel = std::abs(fit.lambda_prime - lambda) / lambda;
        o.detail << " (theta=" << theta << " lambda=" << lambda << ") agree=" << agree << " u'''(0)=" << od.d[2]
                 << " fit_rel=" << rel;
        o.require(agree < 1e-6, "quadrature vs direct");
        o.require(odd, "odd origin derivatives");
        o.require(rel < 1e-4, "fitted lambda");
    }
}

void criterion_counterexample(Outcome& o)
{
    const PhaseCurve& c = shared().curve_1e4;
    const TimeSamples ts = t_of_eta(c, 1.05);
    if (!ts.T_inf)
        throw TailUnbounded("no finite blow-up time");
    const RadialProfile psi = rebuild_profile(c, 1.0, 1.0);
    const PositivePairConfig cfg{1.0, 1.0, 0.55};
    const RadialProfile phi = build_phi(cfg, default_phi_grid(12.0));
    const SeparableSolution s = assemble(phi, psi, 0, 0.55, std::exp(*ts.T_inf));
    const auto pts = sample_points(s, 1000, 7);
    const VerificationReport rep = full_residual(s, pts);
    const CompletenessReport cr = completeness_check(s);

    // psi''' at an interior node, from the sampled u' = v
    const double r_probe = 0.5 * s.R_inf;
    const double psi3 = local_derivatives(psi.r, psi.v, r_probe, 2)(2);
    o.detail << "N=" << s.N << " kappa=" << s.kappa << " R_inf=" << s.R_inf << " residual_max="
             << rep.residual_max << " min_eig=" << rep.convexity_margin << " complete=" << cr.pass
             << " psi'''(" << r_probe << ")=" << psi3;
    o.require(s.N == 3, "N = 3");
    o.require(rep.points == 1000 && rep.residual_max < 1e-4, "residual < 1e-4");
    o.require(rep.convexity_margin > 0.0, "min Hessian eigenvalue > 0");
    o.require(cr.pass, "completeness: " + cr.witness);
    o.require(std::abs(psi3) > 1e-3, "non-quadratic");
}

void criterion_positive_results(Outcome& o)
{
    int radial_ok = 0, radial_total = 0;
    for (int n : {3, 4, 5})
        for (double theta : {0.6, 0.75, 1.0, 1.5})
            for (Window w : {Window{1.0, 1.05}, Window{0.95, 1.0}}) {
                ++radial_total;
                const BernsteinReport r = bernstein_radial_check(n, theta, w, 50);
                if (r.pass)
                    ++radial_ok;
                else
                    o.require(false, "radial n=" + std::to_string(n) + " theta=" + std::to_string(theta));
            }
    o.detail << "radial " << radial_ok << "/" << radial_total;
    const auto nodes = linspace(0.2, 3.0, 57);
    for (int k : {2, 3}) {
        const double theta = (2.0 * k + 1.0) / (2.0 * k + 2.0);
        double worst = 0.0;
        for (const auto& r : power_solution_residual(k, theta, 1.0, nodes))
            worst = std::max(worst, r.relative());
        o.detail << " power(k=" << k << ")=" << worst;
        o.require(worst < 1e-6, "power solution k=" + std::to_string(k));
    }
    for (double theta : {0.6, 1.0, 2.0}) {
        const bool ok = bernstein_1d_check(theta).pass;
        o.detail << " 1d(" << theta << ")=" << (ok ? "pass" : "fail");
        o.require(ok, "1-D check theta=" + std::to_string(theta));
    }
}

void criterion_round_trips(Outcome& o)
{
    const PhaseCurve& c = shared().curve_1e3;
    const RadialProfile p = rebuild_profile(c, 1.0, 1.0);
    const auto etas = c.etas();
    const auto zetas = c.zetas();
    double rt = 0.0;
    for (const auto& q : profile_to_phase(p)) {
        if (q.eta < 1.1 || q.eta > c.eta_max / 2.0)
            continue;
        const double z = local_interpolate(etas, zetas, q.eta);
        rt = std::max(rt, std::abs(q.zeta - z) / std::abs(z));
    }
    o.detail << "phase round trip=" << rt;
    o.require(rt < 1e-5, "phase <-> profile round trip");

    const RadialProfile p2 = rebuild_profile(c, 2.0, 1.0);
    std::vector<double> v2, u2;
    for (std::size_t i = 0; i < p.size(); ++i) {
        v2.push_back(2.0 * p.v[i]);
        u2.push_back(2.0 * p.u[i]);
    }
    const double scale_err = std::max(max_rel(p2.v, v2), max_rel(p2.u, u2));
    const auto e1 = profile_to_phase(p), e2 = profile_to_phase(p2);
    double eta_err = 0.0;
    for (std::size_t i = 0; i < std::min(e1.size(), e2.size()); ++i)
        eta_err = std::max(eta_err, std::abs(e1[i].eta - e2[i].eta) / e1[i].eta);
    o.detail << " scaling v,u=" << scale_err << " eta=" << eta_err;
    o.require(scale_err < 1e-12 && eta_err < 1e-9, "scaling covariance");

    // cylinder factor: same residual statistics and eigenvalues
    const TimeSamples ts = t_of_eta(shared().curve_1e4, 1.05);
    const RadialProfile psi = rebuild_profile(shared().curve_1e4, 1.0, 1.0);
    const RadialProfile phi = build_phi(PositivePairConfig{1.0, 1.0, 0.55}, default_phi_grid(12.0));
    const SeparableSolution s0 = assemble(phi, psi, 0, 0.55, std::exp(*ts.T_inf));
    const SeparableSolution s1 = assemble(phi, psi, 1, 0.55, std::exp(*ts.T_inf));
    const auto pts1 = sample_points(s1, 200, 11);
    std::vector<Eigen::VectorXd> pts0;
    for (const auto& X : pts1)
        pts0.push_back(X.head(s0.N));
    const VerificationReport r0 = full_residual(s0, pts0), r1 = full_residual(s1, pts1);
    o.detail << " cylinder residual " << r0.residual_max << " -> " << r1.residual_max
             << " lambda_psi " << s0.lambda_psi << " -> " << s1.lambda_psi;
    o.require(s1.N == 4 && s1.lambda_psi == s0.lambda_psi && s1.lambda_phi == s0.lambda_phi, "eigenvalues unchanged");
    o.require(r1.residual_max < 1e-4 && std::abs(r1.residual_max - r0.residual_max) < 1e-5,
              "cylinder residual unchanged");
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {"Taylor constant", criterion_taylor},
        {"Calibration limit", criterion_calibration},
        {"Fixed point", criterion_fixed_point},
        {"Global bounds", criterion_bounds},
        {"Blow-up time", criterion_blowup},
        {"1-D positive pair", criterion_positive},
        {"Counterexample end-to-end", criterion_counterexample},
        {"Positive results", criterion_positive_results},
        {"Round-trips", criterion_round_trips},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass)
            ++failed;
        std::printf("%s %zu %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
