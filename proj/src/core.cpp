#include "amte/core.hpp"

#include "amte/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace amte {

void ModelParams::validate() const
{
    if (n < 1)
        throw ParameterError("n must be >= 1");
    if (!(theta > 0.0))
        throw ParameterError("theta must be > 0");
    if (!(eta0 > 1.0))
        throw ParameterError("eta0 must be > 1");
}

bool ModelParams::upper_bound_claimed() const
{
    return theta >= 1.0 / n && theta < static_cast<double>(n) / (n + 1);
}

void ModelParams::validate_negative(bool upper_bounds) const
{
    validate();
    if (n < 2 || n > 5)
        throw ParameterError("negative-pair construction needs 2 <= n <= 5");
    if (!(theta > static_cast<double>(n - 7) / (n * n)))
        throw ParameterError("global extension needs theta > (n-7)/n^2");
    if (upper_bounds && !upper_bound_claimed())
        throw ParameterError("upper growth bound needs theta in [1/n, n/(n+1))");
}

void PhaseCurve::validate() const
{
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!(s.eta > 1.0))
            throw DomainError("phase curve sample with eta <= 1");
        if (!(s.zeta > 0.0))
            throw PositivityLoss("phase curve sample with zeta <= 0 at eta = " + std::to_string(s.eta));
        if (i > 0) {
            if (!(s.eta > samples[i - 1].eta))
                throw DomainError("phase curve samples must increase in eta");
            if (!(s.I > samples[i - 1].I))
                throw DomainError("I must increase along the curve");
        }
    }
}

std::vector<double> PhaseCurve::etas() const
{
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples)
        out.push_back(s.eta);
    return out;
}

std::vector<double> PhaseCurve::zetas() const
{
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples)
        out.push_back(s.zeta);
    return out;
}

std::vector<double> PhaseCurve::integrals() const
{
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples)
        out.push_back(s.I);
    return out;
}

void RadialProfile::validate() const
{
    if (r.size() != v.size() || r.size() != u.size())
        throw InputError("profile columns differ in length");
    for (std::size_t i = 1; i < r.size(); ++i)
        if (!(r[i] > r[i - 1]))
            throw InputError("profile radii must increase");
    if (!r.empty() && r.front() < 0.0)
        throw InputError("profile radii must be >= 0");
}

std::vector<RadialJet> profile_jets(const RadialProfile& p, const JetOptions& opt)
{
    const std::size_t w = opt.width;
    const std::size_t half = w / 2;
    std::vector<RadialJet> out;
    if (p.size() < w)
        throw GridTooCoarse("profile has fewer nodes than the stencil");
    for (std::size_t i = half; i + half < p.size(); ++i) {
        if (p.r[i] <= opt.r_floor)
            continue;
        const auto d = local_derivatives(p.r, p.v, p.r[i], 3, w);
        out.push_back({p.r[i], p.v[i], d(1), d(2), d(3)});
    }
    return out;
}

RadialJet function_jet(const ScalarFn& u, double r, const JetOptions& opt)
{
    const double h = opt.h_rel * std::max(r, 1e-3);
    RadialJet j{r, 0, 0, 0, 0};
    j.d1 = richardson_derivative(u, r, 1, h).value;
    j.d2 = richardson_derivative(u, r, 2, h).value;
    j.d3 = richardson_derivative(u, r, 3, h).value;
    j.d4 = richardson_derivative(u, r, 4, h).value;
    return j;
}

namespace {

std::vector<NodeResidual> residuals_of(const std::vector<RadialJet>& jets, double theta, int n,
                                       double lambda_prime)
{
    if (jets.size() < 5)
        throw GridTooCoarse("fewer than 5 usable nodes for the residual");
    std::vector<NodeResidual> out;
    out.reserve(jets.size());
    for (const auto& j : jets) {
        if (!(j.d2 > 0.0))
            throw NonConvexProfile("u'' <= 0 at r = " + std::to_string(j.r));
        const auto t = radial_terms(j, theta, n, lambda_prime);
        out.push_back({j.r, t.value, t.scale});
    }
    return out;
}

}  // namespace

std::vector<NodeResidual> radial_residual(const RadialProfile& p, double theta, int n,
                                          double lambda_prime, const JetOptions& opt)
{
    return residuals_of(profile_jets(p, opt), theta, n, lambda_prime);
}

std::vector<NodeResidual> radial_residual(const ScalarFn& u, std::span<const double> nodes,
                                          double theta, int n, double lambda_prime,
                                          const JetOptions& opt)
{
    std::vector<NodeResidual> out;
    for (double r : nodes) {
        const RadialJet j = function_jet(u, r, opt);
        if (!(j.d2 > 0.0))
            throw NonConvexProfile("u'' <= 0 at r = " + std::to_string(r));
        const auto t = radial_terms(j, theta, n, lambda_prime);
        out.push_back({r, t.value, t.scale});
    }
    return out;
}

std::vector<PhasePoint> profile_to_phase(const RadialProfile& p, const JetOptions& opt)
{
    const std::size_t w = opt.width;
    const std::size_t half = w / 2;
    if (p.size() < w)
        throw GridTooCoarse("profile has fewer nodes than the stencil");
    std::vector<double> rs, etas;
    for (std::size_t i = half; i + half < p.size(); ++i) {
        if (p.r[i] <= opt.r_floor)
            continue;
        if (!(p.v[i] > 0.0))
            throw DegenerateProfile("v vanishes at r = " + std::to_string(p.r[i]));
        const auto d = local_derivatives(p.r, p.v, p.r[i], 1, w);
        rs.push_back(p.r[i]);
        etas.push_back(p.r[i] * d(1) / p.v[i]);
    }
    if (rs.size() < w)
        throw GridTooCoarse("too few nodes above the radius floor");
    std::vector<PhasePoint> out;
    out.reserve(rs.size());
    for (std::size_t k = 0; k < rs.size(); ++k) {
        const auto d = local_derivatives(rs, etas, rs[k], 1, w);
        out.push_back({rs[k], etas[k], rs[k] * d(1)});
    }
    return out;
}

std::vector<PhasePoint> profile_to_phase(const ScalarFn& v, std::span<const double> nodes,
                                         const JetOptions& opt)
{
    auto eta = [&](double r) {
        const double h = opt.h_rel * r;
        return r * richardson_derivative(v, r, 1, h).value / v(r);
    };
    std::vector<PhasePoint> out;
    for (double r : nodes) {
        if (!(v(r) > 0.0))
            throw DegenerateProfile("v vanishes at r = " + std::to_string(r));
        const double dz = richardson_derivative(eta, r, 1, opt.h_rel * r).value;
        out.push_back({r, eta(r), r * dz});
    }
    return out;
}

LambdaFit effective_lambda_fit(const RadialProfile& p, double theta, int n, const FitOptions& opt)
{
    std::vector<RadialJet> jets;
    for (const auto& j : profile_jets(p, opt.jets))
        if (j.r >= opt.r_min && j.r <= opt.r_max)
            jets.push_back(j);
    const auto res = residuals_of(jets, theta, n, 0.0);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < jets.size(); ++k) {
        const double s = jets[k].d2 * jets[k].d2;
        num += res[k].residual * s;
        den += s * s;
    }
    LambdaFit fit;
    fit.lambda_prime = num / den;
    fit.nodes = jets.size();
    double spread = 0.0;
    for (std::size_t k = 0; k < jets.size(); ++k) {
        const double lk = res[k].residual / (jets[k].d2 * jets[k].d2);
        spread = std::max(spread, std::abs(lk - fit.lambda_prime));
    }
    fit.fit_residual = spread / std::max(std::abs(fit.lambda_prime), 1e-8);
    fit.eigenvalue = theta * fit.lambda_prime;
    if (fit.fit_residual > opt.spread_threshold)
        throw InconsistentProfile("lambda' varies across nodes: relative spread "
                                  + std::to_string(fit.fit_residual));
    return fit;
}

OriginDerivatives origin_derivatives(const RadialProfile& p, std::size_t width)
{
    if (p.r.empty() || p.r.front() != 0.0)
        throw DomainError("profile grid must start at r = 0");
    if (p.size() < width + 2)
        throw GridTooCoarse("profile too short for origin derivatives");
    const std::span<const double> r(p.r);
    auto estimate = [&](std::size_t w) {
        const Eigen::MatrixXd wts = fornberg_weights(0.0, r.subspan(0, w), 4);
        const Eigen::Map<const Eigen::VectorXd> f(p.v.data(), static_cast<Eigen::Index>(w));
        Eigen::VectorXd d = wts.transpose() * f;
        Eigen::VectorXd absw = wts.cwiseAbs().colwise().sum().transpose();
        return std::pair{d, absw};
    };
    const auto [hi, wsum] = estimate(width);
    const auto [lo, wsum_lo] = estimate(width - 2);
    double vmax = 0.0;
    for (std::size_t i = 0; i < width; ++i)
        vmax = std::max(vmax, std::abs(p.v[i]));
    OriginDerivatives out{};
    for (int k = 0; k <= 4; ++k) {
        out.d[k] = hi(k);
        const double noise = 1e-13 * vmax * wsum(k);
        out.tol[k] = 10.0 * (noise + std::abs(hi(k) - lo(k)));
    }
    return out;
}

void attach_derivative_samples(RadialProfile& p, std::size_t width)
{
    DerivativeSamples ds;
    if (p.size() < width + 2)
        throw GridTooCoarse("profile too short for derivative samples");
    if (p.r.front() == 0.0) {
        const auto o = origin_derivatives(p, width);
        ds.r.push_back(0.0);
        ds.d1.push_back(o.d[1]);
        ds.d2.push_back(o.d[2]);
        ds.d3.push_back(o.d[3]);
        ds.d4.push_back(o.d[4]);
    }
    const std::size_t half = width / 2;
    for (std::size_t i = half; i + half < p.size(); ++i) {
        if (p.r[i] == 0.0)
            continue;
        const auto d = local_derivatives(p.r, p.v, p.r[i], 4, width);
        ds.r.push_back(p.r[i]);
        ds.d1.push_back(d(1));
        ds.d2.push_back(d(2));
        ds.d3.push_back(d(3));
        ds.d4.push_back(d(4));
    }
    p.derivative_samples = std::move(ds);
}

}  // namespace amte
