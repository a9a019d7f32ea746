#include "amte/reconstruct.hpp"

#include "amte/errors.hpp"
#include "amte/negative_pair.hpp"
#include "amte/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace amte {

TimeSamples t_of_eta(const PhaseCurve& curve, double eta0)
{
    const auto& S = curve.samples;
    if (S.size() < 8)
        throw InputError("phase curve too short to integrate");
    TimeSamples ts;
    ts.eta0 = eta0;
    std::vector<double> ft, fu;
    for (const auto& s : S) {
        const double x = s.eta - 1.0;
        if (!(x > 0.0) || !(s.zeta > 0.0))
            throw PositivityLoss("curve must be positive on (1, eta_max]");
        if (!ts.sigma.empty() && std::log(x) <= ts.sigma.back())
            throw InputError("curve samples must increase in eta");
        ts.sigma.push_back(std::log(x));
        ts.I.push_back(s.I);
        ft.push_back(x / s.zeta);
        fu.push_back(std::exp(s.I) * x / s.zeta);
    }
    const double s0 = std::log(eta0 - 1.0);
    if (s0 < ts.sigma.front() || s0 > ts.sigma.back())
        throw DomainError("eta0 outside the sampled range");
    ts.t = cumulative_integral(ts.sigma, ft);
    const double shift = local_interpolate(ts.sigma, ts.t, s0);
    for (double& t : ts.t)
        t -= shift;
    ts.U = cumulative_integral(ts.sigma, fu);
    const double U1 = std::exp(S.front().I) / 2.0;
    for (double& u : ts.U)
        u += U1;
    try {
        ts.T_inf = blowup_time(curve, eta0).T_inf;
    } catch (const TailUnbounded&) {
    }
    return ts;
}

TimePoint evaluate_at(const TimeSamples& ts, double t)
{
    if (t > ts.t.back())
        throw DomainError("t beyond the sampled curve");
    if (t < ts.t.front()) {
        const double dx = 2.0 * (t - ts.t.front());
        const double x = std::exp(ts.sigma.front() + dx);
        const double I = ts.I.front() + dx;
        return {x, I, std::exp(I) / 2.0};
    }
    const double s = local_interpolate(ts.t, ts.sigma, t);
    return {std::exp(s), local_interpolate(ts.sigma, ts.I, s), local_interpolate(ts.sigma, ts.U, s)};
}

std::vector<double> etabar_minus_one(const TimeSamples& ts, std::span<const double> r, double r0)
{
    std::vector<double> out;
    out.reserve(r.size());
    for (double ri : r) {
        if (!(ri > 0.0))
            throw DomainError("eta-bar is sampled at r > 0");
        const double x = evaluate_at(ts, std::log(ri / r0)).x;
        if (!(x > 0.0))
            throw PositivityLoss("eta-bar reached 1 at r = " + std::to_string(ri));
        out.push_back(x);
    }
    return out;
}

std::vector<double> etabar_of_r(const PhaseCurve& curve, std::span<const double> r, double r0)
{
    auto x = etabar_minus_one(t_of_eta(curve, curve.params.eta0), r, r0);
    for (double& e : x)
        e += 1.0;
    return x;
}

OriginBound origin_bound_scan(const TimeSamples& ts, double r0, double r_max, std::size_t samples,
                              double alpha_prime)
{
    OriginBound ob;
    ob.alpha_prime = alpha_prime;
    ob.r = logspace(r_max * 1e-6, r_max, samples);
    const auto x = etabar_minus_one(ts, ob.r, r0);
    bool positive = true;
    for (std::size_t i = 0; i < ob.r.size(); ++i) {
        const double q = x[i] / (ob.r[i] * ob.r[i]);
        ob.ratio.push_back(q);
        ob.C = std::max(ob.C, q);
        ob.C_alpha = std::max(ob.C_alpha, x[i] / std::pow(ob.r[i], 2.0 * alpha_prime));
        positive = positive && x[i] > 0.0;
    }
    ob.C *= 1.0 + 1e-6;
    ob.C_alpha *= 1.0 + 1e-6;
    ob.limit = ob.ratio.front();
    ob.holds = positive && std::isfinite(ob.C) && std::abs(ob.ratio[1] - ob.limit) <= 1e-3 * ob.limit;
    return ob;
}

std::vector<double> default_profile_grid(const TimeSamples& ts, double r0, double h, double r_uniform)
{
    std::vector<double> g = linspace(0.0, r_uniform, static_cast<std::size_t>(std::llround(r_uniform / h)) + 1);
    for (double t : ts.t) {
        const double r = r0 * std::exp(t);
        if (r > r_uniform + 0.5 * h)
            g.push_back(r);
    }
    return g;
}

RadialProfile rebuild_profile(const TimeSamples& ts, int n, double v0, double r0,
                              std::span<const double> grid)
{
    if (!(v0 > 0.0) || !(r0 > 0.0))
        throw ParameterError("v0 and r0 must be > 0");
    RadialProfile p;
    p.n = n;
    for (double r : grid) {
        if (r < 0.0)
            throw DomainError("profile grid must be nonnegative");
        p.r.push_back(r);
        if (r == 0.0) {
            p.v.push_back(0.0);
            p.u.push_back(0.0);
            continue;
        }
        const double t = std::log(r / r0);
        const TimePoint tp = evaluate_at(ts, t);
        p.v.push_back(v0 * std::exp(tp.I - t));
        p.u.push_back(v0 * r0 * tp.U);
    }
    return p;
}

RadialProfile rebuild_profile(const PhaseCurve& curve, double v0, double r0, std::span<const double> grid)
{
    return rebuild_profile(t_of_eta(curve, curve.params.eta0), curve.params.n, v0, r0, grid);
}

RadialProfile rebuild_profile(const PhaseCurve& curve, double v0, double r0)
{
    const TimeSamples ts = t_of_eta(curve, curve.params.eta0);
    const auto grid = default_profile_grid(ts, r0);
    return rebuild_profile(ts, curve.params.n, v0, r0, grid);
}

RadialProfile rebuild_degenerate(int n, double v0, double r0, std::span<const double> grid)
{
    RadialProfile p;
    p.n = n;
    for (double r : grid) {
        p.r.push_back(r);
        p.v.push_back(v0 / r0 * r);
        p.u.push_back(v0 / (2.0 * r0) * r * r);
    }
    return p;
}

DivergenceTest boundary_divergence(const RadialProfile& p, double R_inf, double threshold)
{
    DivergenceTest d;
    if (p.r.size() < 8) {
        d.witness = "profile too short";
        return d;
    }
    const double r_lo = p.r.front();
    const double r_hi = p.r.back();
    for (int j = 0; j < 20; ++j) {
        const double dist = std::pow(10.0, -j);
        const double r = R_inf - dist;
        if (r < r_lo)
            continue;
        if (r > r_hi)
            break;
        d.distance.push_back(dist);
        d.u.push_back(local_interpolate(p.r, p.u, r));
    }
    for (std::size_t i = 1; i < d.u.size(); ++i)
        d.increment.push_back(d.u[i] - d.u[i - 1]);
    for (std::size_t i = 1; i < d.increment.size(); ++i)
        d.ratio.push_back(d.increment[i] / d.increment[i - 1]);
    if (d.ratio.empty()) {
        d.witness = "fewer than three decades sampled before the boundary";
        return d;
    }
    d.divergent = d.increment.back() > 0.0 && d.ratio.back() >= threshold;
    d.witness = "increment ratio " + std::to_string(d.ratio.back()) + " at distance "
                + std::to_string(d.distance.back());
    return d;
}

LargeConditionReport large_condition_check(const RadialProfile& p, double R_inf, double r0, double ceiling)
{
    LargeConditionReport rep;
    rep.ceiling = ceiling;
    if (!std::isfinite(R_inf)) {
        rep.finite_boundary = false;
        rep.pass = true;
        rep.witness = "no finite boundary";
        rep.lower_bound = {"v>=v0(T-log r0)/(T-log r)", true, 0.0, 0.0, 0.0};
        return rep;
    }
    const double T = std::log(R_inf);
    const double v0 = local_interpolate(p.r, p.v, r0);
    double margin = std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < p.r.size(); ++i) {
        const double r = p.r[i];
        if (r < r0 || r >= R_inf)
            continue;
        const double bound = v0 * (T - std::log(r0)) / (T - std::log(r));
        margin = std::min(margin, (p.v[i] - bound) / p.v[i]);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    rep.lower_bound = {"v>=v0(T-log r0)/(T-log r)", margin >= 0.0, lo, hi, margin};
    rep.divergence = boundary_divergence(p, R_inf);
    rep.pass = rep.divergence.divergent;
    if (!rep.divergence.increment.empty() && rep.divergence.increment.back() > 0.0)
        rep.decades_to_ceiling =
            std::max(0.0, (ceiling - rep.divergence.u.back()) / rep.divergence.increment.back());
    rep.witness = rep.divergence.witness;
    return rep;
}

}  // namespace amte
