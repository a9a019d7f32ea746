#include "amte/negative_pair.hpp"

#include "amte/errors.hpp"
#include "amte/phase_plane.hpp"

#include "json.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace amte {

namespace odeint = boost::numeric::odeint;

TaylorData taylor_coeffs(int n, double theta)
{
    if (n < 2 || n > 5)
        throw ParameterError("Taylor data are given for 2 <= n <= 5");
    const double nn = n;
    const double m = nn * (nn - 2.0);
    TaylorData t;
    t.alpha = (4.0 * (nn + 2) * (nn + 2) * theta + (2 * nn * nn - 24 * nn + 104)) / (nn * nn - 2 * nn + 24);
    const double a = t.alpha;
    t.beta = (48.0 * (nn + 2) * (nn - 2) * theta + 6.0 * (nn - 2) * (9 * nn - 8) + 528.0
              + 6.0 * (m + 12) * a * a
              - 3.0 * (4.0 * (nn + 2) * (nn - 2) * theta + (nn - 2) * (13 * nn - 4) + 144.0) * a)
             / (96.0 + 2.0 * m);
    const double b = t.beta;
    const double M = 8.0 + m;
    const double s1 = nn * (nn * theta - (2 * nn - 3));
    const double s2 = nn * (nn * theta - (nn - 1));
    const double gab = -17.0 * M / 96.0 * a * a * a + (9.0 * s1 + 53.0 * M) / 48.0 * a * a
                       - (216.0 * s2 + 1021.0 * M) / 288.0 * a + 37.0 * M / 16.0
                       - (12.0 * s1 + 61.0 * M) / 48.0 * b + (112.0 - m) / 48.0 * a * b;
    t.gamma = 48.0 * gab / (80.0 + m);
    return t;
}

TaylorData series_taylor(int n, double theta)
{
    if (n < 1)
        throw ParameterError("n must be >= 1");
    const double N = n;
    const double th = theta;
    TaylorData t;
    t.alpha = (2 * N + th * (4 * N + 8) + 12) / (N + 4);
    t.beta = (N * (-18 * N - 84)
              + th * (N * (N * (-18 * N - 72) - 24)
                      + th * (N * (N * (24 * N + 144) + 288) + 192) + 96)
              - 96)
             / (N * (N * (N + 14) + 64) + 96);
    t.gamma =
        (N * (N * (N * (96 * N + 960) + 4080) + 8160)
         + th * (N * (N * (N * (N * (96 * N + 480) - 96) - 5088) - 12096)
                 + th * (N * (N * (N * (N * (-288 * N - 2016) - 5472) - 9216) - 12672)
                         + th * (N * (N * (N * (N * (192 * N + 1344) + 3648) + 6144) + 8448) + 6144)
                         - 9216)
                 - 9216)
         + 6144)
        / (N * (N * (N * (N * (N + 26) + 264) + 1312) + 3200) + 3072);
    return t;
}

double series_fifth(int n, double theta)
{
    const double N = n;
    const double th = theta;
    const double num =
        N * (N * (N * (N * (N * (N * (-600 * N - 13200) - 131640) - 777360) - 2867040) - 6488640)
             - 8217600)
        + th * (N * (N * (N * (N * (N * (N * (N * (-600 * N - 6720) - 6480) + 246960) + 1863840)
                               + 6843840)
                          + 14390400)
                     + 16565760)
                + th * (N * (N * (N * (N * (N * (N * (N * (3000 * N + 39360) + 170160) + 278400)
                                            + 193920)
                                       + 1079040)
                                  + 4604160)
                             + 7511040)
                        + th * (N * (N * (N * (N * (N * (N * (N * (-4320 * N - 51360) - 162720)
                                                          + 30720)
                                                     + 468480)
                                                - 2257920)
                                           - 10237440)
                                      - 13977600)
                                + th * (N * (N * (N * (N * (N * (N * (N * (1920 * N + 19200) + 13440)
                                                                  - 380160)
                                                             - 1367040)
                                                        - 1136640)
                                                   + 1812480)
                                              + 3502080)
                                         + 1474560)
                                - 6635520)
                        + 4423680)
                + 8110080)
        - 4423680;
    const double den =
        N * (N * (N * (N * (N * (N * (N * (N + 46) + 908) + 10056) + 68416) + 293120) + 773120)
             + 1148928)
        + 737280;
    return num / den;
}

double calibration_target(int n, CalibrationLimit limit)
{
    if (limit == CalibrationLimit::printed)
        return 4.0 + n * (n - 2) / 2.0;
    return n * (n + 2) / 2.0;
}

Candidate Candidate::sample(const Chebyshev& g, const ScalarFn& f)
{
    return Candidate(g, g.sample(f));
}

double Candidate::operator()(double eta, int k) const
{
    return grid.eval(values, eta, k);
}

Eigen::VectorXd Candidate::nodal_derivative(int k) const
{
    Eigen::VectorXd d = values;
    for (int i = 0; i < k; ++i)
        d = grid.diff() * d;
    return d;
}

Candidate taylor_seed(const Chebyshev& grid, const TaylorData& t)
{
    return Candidate::sample(grid, [&](double eta) {
        const double x = eta - 1.0;
        return x * (t.d1 + x * (t.alpha / 2.0 + x * t.beta / 6.0));
    });
}

Calibration calibrate(const Candidate& phi, int n, CalibrationLimit limit)
{
    const auto& x_nodes = phi.grid.nodes();
    const Eigen::Index N = x_nodes.size();
    const double x0 = phi.eta0() - 1.0;
    if (std::abs(phi.grid.a() - 1.0) > 0.0)
        throw DomainError("candidate grid must start at eta = 1");
    const Eigen::VectorXd d1 = phi.nodal_derivative(1);
    const Eigen::VectorXd d2 = phi.nodal_derivative(2);
    const double c = d1(0);
    const double d = d2(0) / 2.0;
    if (std::abs(phi.values(0)) > 1e-10 || std::abs(c - 2.0) > 1e-5)
        throw SingularityMismatch("the exponent integrand is unbounded at eta = 1 (phi'(1) = "
                                  + std::to_string(c) + ")");
    Eigen::VectorXd h(N);
    h(0) = (1.0 - 2.0 * d / c) / c;
    for (Eigen::Index j = 1; j < N; ++j) {
        const double eta = x_nodes(j);
        const double x = eta - 1.0;
        if (!(phi.values(j) > 0.0))
            throw DomainError("candidate must be positive on (1, eta0]");
        h(j) = (eta + 1.0) / phi.values(j) - 1.0 / x;
    }
    Calibration cal;
    const Eigen::VectorXd Qh = phi.grid.cumint() * h;
    cal.J = Qh.array() - Qh(N - 1);
    cal.Phi.resize(N);
    cal.Phi(0) = std::exp(cal.J(0)) / (c * x0);
    for (Eigen::Index j = 1; j < N; ++j) {
        const double x = x_nodes(j) - 1.0;
        cal.Phi(j) = x / phi.values(j) * std::exp(cal.J(j)) / x0;
    }
    cal.phi_limit = cal.Phi(0);
    cal.lambda = calibration_target(n, limit) / cal.phi_limit;
    return cal;
}

double calibrate_lambda(const Candidate& phi, int n, CalibrationLimit limit)
{
    return calibrate(phi, n, limit).lambda;
}

double calibration_product(const Candidate& phi, const Calibration& cal, double eta)
{
    const double x = eta - 1.0;
    const double x0 = phi.eta0() - 1.0;
    const double J = phi.grid.eval(cal.J, eta);
    return cal.lambda * x / phi(eta) * std::exp(J) / x0;
}

MappedCandidate apply_T(const Candidate& phi, const ModelParams& params, CalibrationLimit limit)
{
    const int n = params.n;
    const double theta = params.theta;
    Calibration cal = calibrate(phi, n, limit);
    const auto& eta = phi.grid.nodes();
    const Eigen::Index N = eta.size();
    // phi'(1) = 2 on the band set; the differentiated slope would feed back with gain n(n-2)/4
    const double c = 2.0;
    Eigen::VectorXd F(N);
    for (Eigen::Index j = 0; j < N; ++j) {
        const double e = eta(j);
        const double x = e - 1.0;
        const double x_over_phi = j == 0 ? 1.0 / c : x / phi.values(j);
        const double g_over_phi = n * e * stationary_factor(e, n, theta) * x_over_phi;
        F(j) = (theta + 1.0) * phi.values(j) / e + linear_coeff(e, n, theta) + g_over_phi
               + cal.lambda * e * e * cal.Phi(j);
    }
    Eigen::VectorXd z = phi.grid.cumint() * F;
    for (Eigen::Index j = 0; j < N; ++j)
        if (z(j) < -1e-14 || z(j) > 1.0)
            throw BlowupInsideWindow("T phi leaves [0, 1] at eta = " + std::to_string(eta(j)));
    MappedCandidate out{Candidate(phi.grid, z), cal.lambda, std::move(cal)};
    return out;
}

MembershipReport membership(const Candidate& phi, const GammaSetSpec& spec, std::size_t samples)
{
    const double x0 = phi.eta0() - 1.0;
    const double s = spec.sigma;
    std::array<double, 6> lo, hi;
    lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    const double b1 = phi(1.0, 3);
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = x0 * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double eta = 1.0 + x;
        const double vals[5] = {phi(eta), phi(eta, 1), phi(eta, 2), phi(eta, 3), 0.0};
        for (int k = 0; k < 4; ++k) {
            lo[k] = std::min(lo[k], vals[k]);
            hi[k] = std::max(hi[k], vals[k]);
        }
        if (i > 0) {
            const double q = (vals[3] - b1) / x;
            lo[4] = std::min(lo[4], q);
            hi[4] = std::max(hi[4], q);
        }
    }
    const double p1 = phi(1.0);
    const double d1 = phi(1.0, 1);
    MembershipReport rep;
    auto add = [&](std::string name, double a, double b, double mn, double mx) {
        rep.checks.push_back({std::move(name), mn >= a && mx <= b, a, b, mn, mx});
    };
    add("phi(1) = 0", -1e-10, 1e-10, p1, p1);
    add("phi'(1) = 2", 2.0 - 1e-6, 2.0 + 1e-6, d1, d1);
    add("0 <= phi <= 1", 0.0 - 1e-14, 1.0, lo[0], hi[0]);
    add("phi' band", 2.0 - s, 2.0 + s, lo[1], hi[1]);
    add("phi'' band", spec.alpha - s, spec.alpha + s, lo[2], hi[2]);
    add("phi''' band", spec.beta - s, spec.beta + s, lo[3], hi[3]);
    add("phi''' quotient band", spec.gamma - 1.0, spec.gamma + 1.0, lo[4], hi[4]);
    rep.core = std::all_of(rep.checks.begin(), rep.checks.end() - 1,
                           [](const BandCheck& c) { return c.holds; });
    rep.gamma = rep.checks.back().holds;
    return rep;
}

LambdaBounds lambda_bounds(int n, double alpha_plus_sigma, double eta0, double target)
{
    (void)n;
    const double x0 = eta0 - 1.0;
    const double as = alpha_plus_sigma;
    LambdaBounds b;
    b.lo = 8.0 * target / as * x0 / (x0 + 4.0 / as);
    b.hi = x0 * target * (2.0 + as / 2.0 * x0) * std::exp(x0 / 2.0);
    return b;
}

LocalSolve fixed_point_solve(int n, double theta, double eta0, const FixedPointOptions& opt)
{
    ModelParams params{n, theta, 0.0, eta0};
    params.validate_negative(false);
    if (opt.limit == CalibrationLimit::printed && n != 2)
        throw ParameterError("the printed calibration limit moves zeta'(1) away from 2 when n != 2;"
                             " use the consistent limit");
    if (!(opt.damping > 0.0 && opt.damping <= 1.0))
        throw ParameterError("damping must lie in (0, 1]");

    const TaylorData printed = taylor_coeffs(n, theta);
    const TaylorData series = series_taylor(n, theta);
    const TaylorData band_data = opt.bands == TaylorSource::printed ? printed : series;

    LocalSolve out;
    out.taylor = printed;
    out.bands = {eta0, band_data.alpha, band_data.beta, band_data.gamma, opt.sigma};

    const Chebyshev grid(opt.order, 1.0, eta0);
    Candidate phi = taylor_seed(grid, series);
    MappedCandidate mapped = apply_T(phi, params, opt.limit);
    bool converged = false;
    for (int it = 1; it <= opt.max_iter; ++it) {
        const Eigen::VectorXd next = (1.0 - opt.damping) * phi.values + opt.damping * mapped.zeta.values;
        const double change = (next - phi.values).cwiseAbs().maxCoeff();
        out.contraction_history.push_back(change);
        phi.values = next;
        out.iterations = it;
        mapped = apply_T(phi, params, opt.limit);
        if (change < opt.tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NoConvergence("fixed-point iteration did not converge in "
                            + std::to_string(opt.max_iter) + " iterations");

    const Candidate& zeta = mapped.zeta;
    out.membership = membership(zeta, out.bands);
    if (!out.membership.core)
        throw MembershipViolation("the fixed point leaves the band set");
    const Calibration cal = calibrate(zeta, n, opt.limit);
    out.lambda_cal = cal.lambda;
    out.bounds = lambda_bounds(n, out.bands.alpha + opt.sigma, eta0, calibration_target(n, opt.limit));
    out.fixed_point = zeta;

    // zeta/(eta-1) keeps full relative precision next to eta = 1
    const auto& nodes = grid.nodes();
    Eigen::VectorXd q(nodes.size());
    q(0) = zeta.nodal_derivative(1)(0);
    for (Eigen::Index j = 1; j < nodes.size(); ++j)
        q(j) = zeta.values(j) / (nodes(j) - 1.0);
    out.ratio = Candidate(grid, q);

    const double x0 = eta0 - 1.0;
    const double xmin = opt.x_min_rel * x0;
    const double decades = std::log10(x0 / xmin);
    const auto count = static_cast<std::size_t>(std::ceil(decades * opt.samples_per_decade)) + 1;
    out.curve.params = {n, theta, -cal.lambda, eta0};
    out.curve.taylor = printed;
    out.curve.eta_max = eta0;
    for (double x : logspace(xmin, x0, count)) {
        const double eta = 1.0 + x;
        const double I = grid.eval(cal.J, eta) + std::log(x / x0);
        out.curve.samples.push_back({eta, x * out.ratio(eta), I});
    }
    out.curve.samples.back() = {eta0, zeta.values(nodes.size() - 1), 0.0};
    return out;
}

PhaseCurve extend_global(const LocalSolve& local, double eta_max, const GlobalOptions& opt)
{
    const ModelParams& p = local.curve.params;
    p.validate_negative(false);
    const double eta0 = p.eta0;
    if (!(eta_max > eta0))
        throw DomainError("eta_max must exceed eta0");

    using State = std::array<double, 2>;  // zeta/eta^2, I
    auto rhs = [&](const State& s, State& ds, double sigma) {
        const double x = std::exp(sigma);
        const double eta = 1.0 + x;
        const double zeta = s[0] * eta * eta;
        if (!(zeta > 0.0))
            throw PositivityLoss("zeta reached 0 at eta = " + std::to_string(eta));
        const double dz = phase_dzeta(eta, zeta, s[1], p.n, p.theta, p.lambda3);
        ds[0] = x * (dz - 2.0 * zeta / eta) / (eta * eta);
        ds[1] = x * (eta + 1.0) / zeta;
    };

    PhaseCurve curve = local.curve;
    curve.eta_max = eta_max;
    const double s0 = std::log(eta0 - 1.0);
    const double s1 = std::log(eta_max - 1.0);
    const double step = std::log(10.0) / opt.samples_per_decade;
    const auto count = static_cast<std::size_t>(std::ceil((s1 - s0) / step)) + 1;
    const std::vector<double> sig = linspace(s0, s1, std::max<std::size_t>(count, 2));

    State y{local.fixed_point.values(local.fixed_point.values.size() - 1) / (eta0 * eta0), 0.0};
    auto observe = [&](const State& s, double sigma) {
        if (sigma == s0)
            return;
        const double eta = 1.0 + std::exp(sigma);
        const double zeta = s[0] * eta * eta;
        if (!(zeta > 0.0))
            throw PositivityLoss("zeta reached 0 at eta = " + std::to_string(eta));
        curve.samples.push_back({eta, zeta, s[1]});
    };
    auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol,
                                           odeint::runge_kutta_fehlberg78<State>());
    try {
        odeint::integrate_times(stepper, rhs, y, sig.begin(), sig.end(), step / 4.0, observe,
                                odeint::max_step_checker(1000000));
    } catch (const odeint::odeint_error& e) {
        throw StepFailure(e.what());
    }
    curve.samples.back().eta = eta_max;
    return curve;
}

const BoundEntry* GrowthReport::find(const std::string& id) const
{
    for (const auto& b : bounds)
        if (b.id == id)
            return &b;
    return nullptr;
}

namespace {

constexpr double kShrink = 1e-6;

struct QuadraticWitness {
    bool certified = false;
    double eps0 = 0.0;
    double eta1 = 0.0;
    double margin = 0.0;
};

double min_ratio_on(const PhaseCurve& c, double lo, double hi)
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : c.samples)
        if (s.eta >= lo && s.eta <= hi)
            m = std::min(m, s.zeta / (s.eta * s.eta));
    return m;
}

QuadraticWitness quadratic_witness(const PhaseCurve& c)
{
    QuadraticWitness w;
    if (c.samples.empty())
        return w;
    const double emax = c.samples.back().eta;
    const double last = min_ratio_on(c, emax / 10.0, emax);
    const double prev = min_ratio_on(c, emax / 100.0, emax / 10.0);
    if (!std::isfinite(last) || !std::isfinite(prev) || !(last > 0.0))
        return w;
    w.eps0 = (1.0 - kShrink) * last;
    w.certified = last >= 0.5 * prev;
    std::size_t k = c.samples.size();
    while (k > 0 && c.samples[k - 1].zeta > w.eps0 * c.samples[k - 1].eta * c.samples[k - 1].eta)
        --k;
    if (k == c.samples.size()) {
        w.certified = false;
        return w;
    }
    w.eta1 = c.samples[k].eta;
    w.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = k; i < c.samples.size(); ++i) {
        const auto& s = c.samples[i];
        w.margin = std::min(w.margin, (s.zeta - w.eps0 * s.eta * s.eta) / s.zeta);
    }
    return w;
}

}  // namespace

GrowthReport growth_bounds_check(const PhaseCurve& curve, int n, double theta)
{
    if (curve.samples.empty())
        throw InputError("empty phase curve");
    GrowthReport rep;
    const auto& S = curve.samples;

    double rmin = std::numeric_limits<double>::infinity();
    for (const auto& s : S)
        rmin = std::min(rmin, s.zeta / (s.eta - 1.0));
    rep.rho = (1.0 - kShrink) * rmin;
    double lin_margin = std::numeric_limits<double>::infinity();
    for (const auto& s : S)
        lin_margin = std::min(lin_margin, (s.zeta - rep.rho * (s.eta - 1.0)) / s.zeta);
    rep.bounds.push_back({"zeta >= rho*(eta-1)", rep.rho > 0.0 && lin_margin > 0.0, S.front().eta,
                          S.back().eta, lin_margin});

    const QuadraticWitness q = quadratic_witness(curve);
    rep.eps0 = q.eps0;
    rep.eta1 = q.eta1;
    rep.quadratic_certified = q.certified;
    rep.bounds.push_back({"zeta > eps0*eta^2", q.certified && q.margin > 0.0, q.eta1, S.back().eta,
                          q.margin});

    ModelParams mp{n, theta, 0.0, 1.05};
    rep.upper_claimed = mp.upper_bound_claimed();
    std::size_t k = S.size();
    while (k > 0 && S[k - 1].zeta <= S[k - 1].eta * S[k - 1].eta)
        --k;
    double up_margin = 0.0;
    if (k < S.size()) {
        rep.eta2 = S[k].eta;
        up_margin = std::numeric_limits<double>::infinity();
        for (std::size_t i = k; i < S.size(); ++i)
            up_margin = std::min(up_margin, (S[i].eta * S[i].eta - S[i].zeta) / (S[i].eta * S[i].eta));
    } else {
        // largest excess over eta^2 on the last decade, reported as a negative margin
        for (const auto& s : S)
            if (s.eta >= S.back().eta / 10.0)
                up_margin = std::min(up_margin, (s.eta * s.eta - s.zeta) / (s.eta * s.eta));
    }
    if (rep.upper_claimed)
        rep.bounds.push_back({"zeta <= eta^2", rep.eta2.has_value() && up_margin > 0.0,
                              rep.eta2.value_or(S.back().eta), S.back().eta, up_margin});
    return rep;
}

BlowupTime blowup_time(const PhaseCurve& curve, double eta0)
{
    const auto& S = curve.samples;
    if (S.size() < 8)
        throw InputError("phase curve too short for the blow-up integral");
    const QuadraticWitness q = quadratic_witness(curve);
    if (!q.certified)
        throw TailUnbounded("no certified quadratic lower bound on the tail");

    const std::vector<double> etas = curve.etas();
    const std::vector<double> zetas = curve.zetas();
    std::vector<double> xs, fs;
    auto it = std::lower_bound(etas.begin(), etas.end(), eta0 - 1e-12 * eta0);
    if (it == etas.end())
        throw DomainError("eta0 beyond the curve");
    if (std::abs(*it - eta0) > 1e-12 * eta0) {
        xs.push_back(eta0);
        fs.push_back(1.0 / local_interpolate(etas, zetas, eta0));
    }
    for (auto i = static_cast<std::size_t>(it - etas.begin()); i < etas.size(); ++i) {
        xs.push_back(etas[i]);
        fs.push_back(1.0 / zetas[i]);
    }
    BlowupTime b;
    b.T_partial = cumulative_integral(xs, fs).back();
    b.eps0 = q.eps0;
    b.tail_bound = 1.0 / (q.eps0 * S.back().eta);
    b.T_inf = b.T_partial + b.tail_bound;
    return b;
}

std::vector<PhaseResidual> phase_residual(const PhaseCurve& curve, std::size_t width, double x_floor)
{
    const ModelParams& p = curve.params;
    const std::vector<double> etas = curve.etas();
    const std::vector<double> zetas = curve.zetas();
    std::vector<PhaseResidual> out;
    for (const auto& s : curve.samples) {
        if (s.eta - 1.0 < x_floor)
            continue;
        const double dz = local_derivatives(etas, zetas, s.eta, 1, width)(1);
        const double t1 = -s.zeta * dz;
        const double t2 = (p.theta + 1.0) * s.zeta * s.zeta / s.eta;
        const double t3 = s.zeta * linear_coeff(s.eta, p.n, p.theta);
        const double t4 = zero_order(s.eta, p.n, p.theta);
        const double t5 = -p.lambda3 * s.eta * s.eta * std::exp(s.I);
        out.push_back({s.eta, t1 + t2 + t3 + t4 + t5,
                       std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5)});
    }
    return out;
}

std::string to_json(const LocalSolve& local, const GrowthReport* growth, const BlowupTime* blowup)
{
    using json = nlohmann::ordered_json;
    json j;
    const auto& p = local.curve.params;
    j["n"] = p.n;
    j["theta"] = p.theta;
    j["eta0"] = p.eta0;
    j["taylor"] = {{"alpha", local.taylor.alpha}, {"beta", local.taylor.beta}, {"gamma", local.taylor.gamma}};
    const TaylorData s = series_taylor(p.n, p.theta);
    j["series"] = {{"alpha", s.alpha}, {"beta", s.beta}, {"zeta4", s.gamma}};
    j["lambda_cal"] = local.lambda_cal;
    j["lambda3"] = p.lambda3;
    j["lambda_bounds"] = {local.bounds.lo, local.bounds.hi};
    j["iterations"] = local.iterations;
    j["final_change"] = local.contraction_history.empty() ? 0.0 : local.contraction_history.back();
    json mem = json::array();
    for (const auto& c : local.membership.checks)
        mem.push_back({{"band", c.name}, {"holds", c.holds}, {"lo", c.lo}, {"hi", c.hi},
                       {"min", c.observed_min}, {"max", c.observed_max}});
    j["membership"] = mem;
    if (growth) {
        j["bounds"] = {{"rho", growth->rho},
                       {"eps0", growth->eps0},
                       {"eta1", growth->eta1},
                       {"eta2", growth->eta2 ? json(*growth->eta2) : json(nullptr)}};
        json checks = json::array();
        for (const auto& b : growth->bounds)
            checks.push_back({{"id", b.id}, {"holds", b.holds}, {"lo", b.lo}, {"hi", b.hi},
                              {"margin", b.margin}});
        j["bound_checks"] = checks;
        j["upper_bound_claimed"] = growth->upper_claimed;
    }
    if (blowup) {
        j["T_inf"] = blowup->T_inf;
        j["tail_bound"] = blowup->tail_bound;
        j["R_inf"] = std::exp(blowup->T_inf);
    }
    return j.dump(2);
}

}  // namespace amte
