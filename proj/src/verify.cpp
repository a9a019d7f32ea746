#include "amte/verify.hpp"

#include "amte/errors.hpp"
#include "amte/numerics.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace amte {

RadialEvaluator::RadialEvaluator(const RadialProfile& p, std::size_t width)
    : width_(width), r_max_(p.r.empty() ? 0.0 : p.r.back())
{
    if (p.r.size() < width)
        throw GridTooCoarse("profile has fewer nodes than the stencil");
    const std::size_t first = p.r.front() == 0.0 ? 1 : 0;
    for (std::size_t i = p.r.size(); i-- > first;) {
        r_.push_back(-p.r[i]);
        v_.push_back(-p.v[i]);
        u_.push_back(p.u[i]);
    }
    r_.insert(r_.end(), p.r.begin(), p.r.end());
    v_.insert(v_.end(), p.v.begin(), p.v.end());
    u_.insert(u_.end(), p.u.begin(), p.u.end());
    dv_.resize(r_.size());
    for (std::size_t i = 0; i < r_.size(); ++i)
        dv_[i] = local_derivatives(r_, v_, r_[i], 1, width_)(1);
}

RadialEvaluator::Value RadialEvaluator::operator()(double r) const
{
    r = std::abs(r);
    if (r > r_max_)
        throw DomainError("radius " + std::to_string(r) + " beyond the sampled profile");
    const std::size_t w = width_ - 1;
    return {local_interpolate(r_, u_, r, w), local_interpolate(r_, v_, r, w),
            local_interpolate(r_, dv_, r, w)};
}

SeparableSolution assemble(const RadialProfile& phi, const RadialProfile& psi, int m_cylinder,
                           double theta, double R_inf, const AssembleOptions& opt)
{
    if (m_cylinder < 0)
        throw ParameterError("cylinder dimension must be >= 0");
    if (phi.n != 1)
        throw ParameterError("phi must be a 1-D factor");
    const int n = psi.n;
    if (!(theta > 0.5 && theta < static_cast<double>(n) / (n + 1)))
        throw ParameterError("assembly needs theta in (1/2, n/(n+1))");
    const LambdaFit fp = effective_lambda_fit(phi, theta, 1, opt.phi_fit);
    const LambdaFit fq = effective_lambda_fit(psi, theta, n, opt.psi_fit);
    if ((fp.eigenvalue > 0.0) == (fq.eigenvalue > 0.0))
        throw SignError("both factors have eigenvalues of the same sign");
    if (!(fp.eigenvalue > 0.0))
        throw SignError("phi must carry the positive eigenvalue");
    SeparableSolution s;
    s.phi = phi;
    s.psi = psi;
    s.lambda_phi = fp.eigenvalue;
    s.lambda_psi = fq.eigenvalue;
    s.kappa = fp.eigenvalue / -fq.eigenvalue;
    s.R_inf = R_inf;
    s.theta = theta;
    s.n = n;
    s.m = m_cylinder;
    s.N = 1 + n + m_cylinder;
    return s;
}

AssembledEvaluator::AssembledEvaluator(const SeparableSolution& s)
    : s_(s), has_phi_(!s.phi.r.empty()),
      phi_(has_phi_ ? s.phi : s.psi), psi_(s.psi),
      dim_((has_phi_ ? 1 : 0) + s.n + s.m)
{
}

Eigen::MatrixXd AssembledEvaluator::hessian(const Eigen::VectorXd& X) const
{
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim_, dim_);
    int k = 0;
    if (has_phi_) {
        H(0, 0) = s_.kappa * phi_(X(0)).d2;
        k = 1;
    }
    const Eigen::VectorXd y = X.segment(k, s_.n);
    const double rho = y.norm();
    const auto q = psi_(rho);
    if (rho < 1e-8) {
        H.block(k, k, s_.n, s_.n) = q.d2 * Eigen::MatrixXd::Identity(s_.n, s_.n);
    } else {
        const double a = q.d1 / rho;
        const Eigen::VectorXd e = y / rho;
        H.block(k, k, s_.n, s_.n) =
            a * Eigen::MatrixXd::Identity(s_.n, s_.n) + (q.d2 - a) * e * e.transpose();
    }
    for (int i = 0; i < s_.m; ++i)
        H(k + s_.n + i, k + s_.n + i) = 1.0;
    return H;
}

double AssembledEvaluator::w(const Eigen::VectorXd& X) const
{
    const double det = hessian(X).determinant();
    if (!(det >= 1e-12))
        throw NearSingular("det D^2u = " + std::to_string(det));
    return std::pow(det, -s_.theta);
}

double AssembledEvaluator::u(const Eigen::VectorXd& X) const
{
    int k = 0;
    double val = 0.0;
    if (has_phi_) {
        val += s_.kappa * phi_(X(0)).u;
        k = 1;
    }
    val += psi_(X.segment(k, s_.n).norm()).u;
    val += 0.5 * X.tail(s_.m).squaredNorm();
    return val;
}

std::vector<Eigen::VectorXd> sample_points(const SeparableSolution& s, std::size_t count,
                                           std::uint64_t seed, const SampleOptions& opt)
{
    const bool has_phi = !s.phi.r.empty();
    const int dim = (has_phi ? 1 : 0) + s.n + s.m;
    const double x_max = has_phi ? std::min(opt.x_max, 0.9 * s.phi.r.back()) : 0.0;
    double rho_max = s.psi.r.back() - 20.0 * opt.h;
    if (std::isfinite(s.R_inf))
        rho_max = std::min(rho_max, (1.0 - opt.boundary_margin) * s.R_inf);
    const double rho_min = 10.0 * opt.h;
    if (!(rho_max > rho_min))
        throw DomainError("no interior room for sample points");

    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Eigen::VectorXd X(dim);
        int k = 0;
        if (has_phi)
            X(k++) = x_max * (2.0 * unit(gen) - 1.0);
        Eigen::VectorXd dir(s.n);
        for (int j = 0; j < s.n; ++j)
            dir(j) = normal(gen);
        const double nrm = dir.norm();
        dir = nrm > 0.0 ? Eigen::VectorXd(dir / nrm) : Eigen::VectorXd::Unit(s.n, 0);
        const double rho = rho_min + (rho_max - rho_min) * unit(gen);
        X.segment(k, s.n) = rho * dir;
        k += s.n;
        for (int j = 0; j < s.m; ++j)
            X(k + j) = 2.0 * unit(gen) - 1.0;
        pts.push_back(std::move(X));
    }
    return pts;
}

namespace {

Eigen::MatrixXd fd_hessian(const AssembledEvaluator& ev, const Eigen::VectorXd& X, double h)
{
    const int d = ev.dim();
    Eigen::MatrixXd H(d, d);
    const double w0 = ev.w(X);
    for (int i = 0; i < d; ++i) {
        Eigen::VectorXd p = X, m = X;
        p(i) += h;
        m(i) -= h;
        H(i, i) = (ev.w(p) - 2.0 * w0 + ev.w(m)) / (h * h);
        for (int j = 0; j < i; ++j) {
            Eigen::VectorXd pp = X, pm = X, mp = X, mm = X;
            pp(i) += h, pp(j) += h;
            pm(i) += h, pm(j) -= h;
            mp(i) -= h, mp(j) += h;
            mm(i) -= h, mm(j) -= h;
            H(i, j) = H(j, i) = (ev.w(pp) - ev.w(pm) - ev.w(mp) + ev.w(mm)) / (4.0 * h * h);
        }
    }
    return H;
}

Eigen::MatrixXd hessian_of_w(const AssembledEvaluator& ev, const Eigen::VectorXd& X,
                             const ResidualOptions& opt)
{
    const Eigen::MatrixXd H1 = fd_hessian(ev, X, opt.h);
    if (!opt.richardson)
        return H1;
    const Eigen::MatrixXd H2 = fd_hessian(ev, X, 0.5 * opt.h);
    return (4.0 * H2 - H1) / 3.0;
}

}  // namespace

std::vector<double> block_contributions(const SeparableSolution& s, const Eigen::VectorXd& X,
                                        const ResidualOptions& opt)
{
    const AssembledEvaluator ev(s);
    const Eigen::MatrixXd Ui = ev.hessian(X).inverse();
    const Eigen::MatrixXd D2w = hessian_of_w(ev, X, opt);
    const Eigen::MatrixXd T = Ui.cwiseProduct(D2w);
    std::vector<double> out;
    int k = 0;
    if (!s.phi.r.empty()) {
        out.push_back(T(0, 0));
        k = 1;
    }
    out.push_back(T.block(k, k, s.n, s.n).sum());
    out.push_back(s.m > 0 ? T.block(k + s.n, k + s.n, s.m, s.m).sum() : 0.0);
    return out;
}

VerificationReport full_residual(const SeparableSolution& s, const std::vector<Eigen::VectorXd>& points,
                                 const ResidualOptions& opt)
{
    const AssembledEvaluator ev(s);
    VerificationReport rep;
    rep.points = points.size();
    rep.residual_tolerance = opt.tolerance;
    rep.convexity_margin = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& X : points) {
        const Eigen::MatrixXd H = ev.hessian(X);
        const double det = H.determinant();
        if (!(det >= 1e-12))
            throw NearSingular("det D^2u = " + std::to_string(det));
        const Eigen::MatrixXd T = H.inverse().cwiseProduct(hessian_of_w(ev, X, opt));
        const double rel = std::abs(T.sum()) / (ev.w(X) + T.cwiseAbs().sum());
        rep.point_residuals.push_back(rel);
        rep.residual_max = std::max(rep.residual_max, rel);
        sum += rel;
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
        rep.convexity_margin = std::min(rep.convexity_margin, es.eigenvalues().minCoeff());
    }
    rep.residual_mean = points.empty() ? 0.0 : sum / static_cast<double>(points.size());
    rep.bounds.push_back({"residual<tolerance", rep.residual_max < opt.tolerance, 0.0, opt.tolerance,
                          (opt.tolerance - rep.residual_max) / opt.tolerance});
    rep.bounds.push_back({"min eigenvalue>0", rep.convexity_margin > 0.0, 0.0, 0.0, rep.convexity_margin});
    rep.effective_lambda = s.lambda_phi / s.kappa;
    rep.effective_lambda_spread =
        s.lambda_psi != 0.0 ? std::abs(rep.effective_lambda + s.lambda_psi) / std::abs(s.lambda_psi) : 0.0;
    if (std::isfinite(s.R_inf) && s.R_inf > 0.0) {
        rep.blowup.R_inf = s.R_inf;
        rep.blowup.T_inf = std::log(s.R_inf);
    }
    return rep;
}

ConvexityReport convexity_check(const SeparableSolution& s, const std::vector<Eigen::VectorXd>& points)
{
    const AssembledEvaluator ev(s);
    ConvexityReport rep;
    rep.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const auto& X : points) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ev.hessian(X), Eigen::EigenvaluesOnly);
        const double e = es.eigenvalues().minCoeff();
        rep.per_point.push_back(e);
        rep.min_eigenvalue = std::min(rep.min_eigenvalue, e);
    }
    return rep;
}

CompletenessReport completeness_check(const SeparableSolution& s, double ceiling)
{
    CompletenessReport rep;
    if (s.phi.r.empty()) {
        rep.phi_side = true;
    } else {
        // convex with positive slope at the end of the grid: grows at least linearly
        const RadialEvaluator ev(s.phi);
        const double r_end = s.phi.r.back();
        rep.phi_slope = s.kappa * ev(r_end).d1;
        bool convex = true;
        for (std::size_t i = 1; i < s.phi.v.size(); ++i)
            convex = convex && s.phi.v[i] > s.phi.v[i - 1];
        rep.phi_side = convex && rep.phi_slope > 0.0;
    }
    rep.psi = large_condition_check(s.psi, s.R_inf, 1.0, ceiling);
    rep.psi_side = rep.psi.pass;
    rep.pass = rep.phi_side && rep.psi_side;
    rep.witness = std::string("phi slope ") + std::to_string(rep.phi_slope) + "; psi: " + rep.psi.witness;
    return rep;
}

namespace {

// int between the anchor m and the endpoint e of |e - s| u''(s) ds, with u(m) = u'(m) = 0.
// |s - e| = tau^4 removes an integrable power singularity at e.
double endpoint_value(double C2, double C3, double theta, double e, double m)
{
    auto L = [&](double s) { return -theta * C2 * s + C3; };
    const double span = std::abs(m - e);
    const double dir = m > e ? 1.0 : -1.0;
    auto f = [&](double tau) {
        if (tau <= 0.0)
            return 0.0;
        const double d = std::pow(tau, 4);
        const double l = L(e + dir * d);
        if (!(l > 0.0))
            return 0.0;
        return d * std::pow(l, -1.0 / theta) * 4.0 * tau * tau * tau;
    };
    return integrate(f, 0.0, std::pow(span, 0.25), 1e-10);
}

}  // namespace

Bernstein1DReport bernstein_1d_check(double theta)
{
    if (!(theta > 0.0))
        throw ParameterError("theta must be > 0");
    Bernstein1DReport rep;
    rep.theta = theta;
    std::vector<std::pair<double, double>> pairs;
    for (double c2 : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0})
        for (double c3 : {0.0, 0.5, 1.0, 2.0})
            pairs.emplace_back(c2, c3);
    for (double c3 : {0.5, 1.0, 2.0})
        pairs.emplace_back(c3 / theta, c3);  // L vanishes at x = 1

    auto L = [&](double c2, double c3, double x) { return -theta * c2 * x + c3; };

    for (auto [c2, c3] : pairs) {
        {
            Bernstein1DCase c;
            c.domain = "R", c.C2 = c2, c.C3 = c3;
            if (c2 != 0.0) {
                const double xs = c3 / (theta * c2);
                const double probe = xs + (c2 > 0.0 ? 1.0 : -1.0);
                c.convex = false;
                c.reason = "-theta C2 x + C3 = " + std::to_string(L(c2, c3, probe)) + " at x = "
                           + std::to_string(probe);
            } else {
                c.convex = c3 > 0.0;
                c.large = c.convex;
                c.reason = c.convex ? "quadratic" : "u'' undefined";
            }
            c.quadratic = c2 == 0.0;
            rep.cases.push_back(c);
        }
        {
            Bernstein1DCase c;
            c.domain = "[0,1]", c.C2 = c2, c.C3 = c3;
            const double l0 = L(c2, c3, 0.0), l1 = L(c2, c3, 1.0);
            c.convex = l0 >= 0.0 && l1 >= 0.0 && (l0 > 0.0 || l1 > 0.0);
            if (c.convex) {
                const bool inf0 = l0 == 0.0 && theta <= 0.5;
                const bool inf1 = l1 == 0.0 && theta <= 0.5;
                const double u0 = inf0 ? INFINITY : endpoint_value(c2, c3, theta, 0.0, 0.5);
                const double u1 = inf1 ? INFINITY : endpoint_value(c2, c3, theta, 1.0, 0.5);
                c.large = std::isinf(u0) && std::isinf(u1);
                c.reason = "u(0) = " + std::to_string(u0) + ", u(1) = " + std::to_string(u1);
            } else {
                c.reason = "u'' not positive on [0,1]";
            }
            c.quadratic = c2 == 0.0;
            rep.cases.push_back(c);
        }
        {
            Bernstein1DCase c;
            c.domain = "[0,inf)", c.C2 = c2, c.C3 = c3;
            c.convex = c2 <= 0.0 && c3 >= 0.0 && (c2 < 0.0 || c3 > 0.0);
            if (c.convex) {
                const bool inf0 = c3 == 0.0 && theta <= 0.5;
                const double u0 = inf0 ? INFINITY : endpoint_value(c2, c3, theta, 0.0, 1.0);
                c.large = std::isinf(u0);
                c.reason = "u(0) = " + std::to_string(u0);
            } else {
                c.reason = "u'' not positive on [0,inf)";
            }
            c.quadratic = c2 == 0.0;
            rep.cases.push_back(c);
        }
    }
    bool ok = true;
    bool quadratic_seen = false;
    for (const auto& c : rep.cases) {
        if (c.convex && c.large && !(c.domain == "R" && c.quadratic))
            ok = false;
        if (c.domain == "R" && c.quadratic && c.convex && c.large)
            quadratic_seen = true;
    }
    rep.pass = ok && quadratic_seen;
    return rep;
}

namespace {

using json = nlohmann::ordered_json;

json profile_json(const RadialProfile& p)
{
    return {{"n", p.n}, {"r", p.r}, {"v", p.v}, {"u", p.u}};
}

RadialProfile profile_from(const json& j)
{
    RadialProfile p;
    p.n = j.at("n").get<int>();
    p.r = j.at("r").get<std::vector<double>>();
    p.v = j.at("v").get<std::vector<double>>();
    p.u = j.at("u").get<std::vector<double>>();
    return p;
}

}  // namespace

std::string to_json(const SeparableSolution& s)
{
    json j;
    j["kappa"] = s.kappa;
    j["R_inf"] = std::isfinite(s.R_inf) ? json(s.R_inf) : json(nullptr);
    j["theta"] = s.theta;
    j["n"] = s.n;
    j["m"] = s.m;
    j["N"] = s.N;
    j["lambda_phi"] = s.lambda_phi;
    j["lambda_psi"] = s.lambda_psi;
    j["phi"] = profile_json(s.phi);
    j["psi"] = profile_json(s.psi);
    return j.dump(1);
}

SeparableSolution solution_from_json(const std::string& text)
{
    try {
        const json j = json::parse(text);
        SeparableSolution s;
        s.kappa = j.at("kappa").get<double>();
        s.R_inf = j.at("R_inf").is_null() ? INFINITY : j.at("R_inf").get<double>();
        s.theta = j.at("theta").get<double>();
        s.n = j.at("n").get<int>();
        s.m = j.at("m").get<int>();
        s.N = j.at("N").get<int>();
        s.lambda_phi = j.at("lambda_phi").get<double>();
        s.lambda_psi = j.at("lambda_psi").get<double>();
        s.phi = profile_from(j.at("phi"));
        s.psi = profile_from(j.at("psi"));
        return s;
    } catch (const json::exception& e) {
        throw InputError(std::string("bad solution file: ") + e.what());
    }
}

std::string to_json(const VerificationReport& r)
{
    json j;
    j["points"] = r.points;
    j["residual_max"] = r.residual_max;
    j["residual_mean"] = r.residual_mean;
    j["residual_tolerance"] = r.residual_tolerance;
    j["convexity_margin"] = r.convexity_margin;
    j["effective_lambda"] = r.effective_lambda;
    j["effective_lambda_spread"] = r.effective_lambda_spread;
    j["blowup"] = {{"T_inf", r.blowup.T_inf}, {"R_inf", r.blowup.R_inf}, {"tail_error", r.blowup.tail_error}};
    json b = json::array();
    bool pass = true;
    for (const auto& e : r.bounds) {
        b.push_back({{"id", e.id}, {"holds", e.holds}, {"lo", e.lo}, {"hi", e.hi}, {"margin", e.margin}});
        pass = pass && e.holds;
    }
    j["bounds"] = b;
    j["pass"] = pass;
    return j.dump(2);
}

std::string to_json(const Bernstein1DReport& r)
{
    json j;
    j["theta"] = r.theta;
    j["pass"] = r.pass;
    json cs = json::array();
    for (const auto& c : r.cases)
        cs.push_back({{"domain", c.domain}, {"C2", c.C2}, {"C3", c.C3}, {"convex", c.convex},
                      {"large", c.large}, {"quadratic", c.quadratic}, {"reason", c.reason}});
    j["cases"] = cs;
    return j.dump(2);
}

}  // namespace amte
