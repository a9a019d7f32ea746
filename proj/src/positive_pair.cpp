#include "amte/positive_pair.hpp"

#include "amte/errors.hpp"
#include "amte/numerics.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <limits>

namespace amte {

namespace odeint = boost::numeric::odeint;

void PositivePairConfig::validate() const
{
    if (!(v0 > 0.0))
        throw ParameterError("v0 must be > 0");
    if (!(theta > 0.5))
        throw ParameterError("theta must be > 1/2");
    if (!(lambda > 0.0))
        throw ParameterError("lambda must be > 0");
}

namespace {

// Parametrisation of v in (0, v0): p in [0, pstar] covers [v0/2, v0] through
// v = v0 (1 - p^2); beyond pstar, 1/sqrt(v) grows linearly in p.
struct RofV {
    const PositivePairConfig& cfg;
    double k, ystar, pstar, rstar;

    explicit RofV(const PositivePairConfig& c)
        : cfg(c), k(2.0 * c.theta - 1.0), ystar(std::sqrt(2.0 / c.v0)), pstar(std::sqrt(0.5)),
          rstar(0.0)
    {
        rstar = part_a(pstar);
    }

    double fa(double tau) const
    {
        if (tau < 1e-9)
            return 2.0 / std::sqrt(k);
        const double t2 = tau * tau;
        const double h = -std::expm1(k * std::log1p(-t2));
        return 2.0 * tau / (std::pow(1.0 - t2, 1.5) * std::sqrt(h));
    }

    double fb(double y) const
    {
        return 2.0 / std::sqrt(-std::expm1(-k * std::log(y * y * cfg.v0)));
    }

    double part_a(double tau) const
    {
        if (tau <= 0.0)
            return 0.0;
        return integrate([this](double t) { return fa(t); }, 0.0, tau)
               / std::sqrt(cfg.a() * cfg.v0);
    }

    double y_of(double p) const { return ystar * (1.0 + (p - pstar)); }

    double v_of(double p) const
    {
        if (p <= pstar)
            return cfg.v0 * (1.0 - p * p);
        const double y = y_of(p);
        return 1.0 / (y * y);
    }

    double p_of(double v) const
    {
        if (v >= 0.5 * cfg.v0)
            return std::sqrt(1.0 - v / cfg.v0);
        return pstar + 1.0 / (std::sqrt(v) * ystar) - 1.0;
    }

    double r(double p) const
    {
        if (p <= pstar)
            return part_a(p);
        return rstar
               + integrate([this](double y) { return fb(y); }, ystar, y_of(p))
                     / std::sqrt(cfg.a());
    }

    double dr(double p) const
    {
        if (p <= pstar)
            return fa(p) / std::sqrt(cfg.a() * cfg.v0);
        return fb(y_of(p)) * ystar / std::sqrt(cfg.a());
    }

    // r(p1) - r(p0), split at pstar where dr/dp has a kink
    double r_between(double p0, double p1) const
    {
        auto f = [this](double p) { return dr(p); };
        if (p0 < pstar && p1 > pstar)
            return integrate(f, p0, pstar) + integrate(f, pstar, p1);
        return integrate(f, p0, p1);
    }
};

double hermite5(double h, double f0, double f1, double d0, double d1, double s0, double s1)
{
    return 0.5 * h * (f0 + f1) + h * h / 10.0 * (d0 - d1) + h * h * h / 120.0 * (s0 + s1);
}

}  // namespace

double quadrature_r_of_v(double v, const PositivePairConfig& cfg)
{
    cfg.validate();
    if (!(v > 0.0 && v < cfg.v0))
        throw DomainError("quadrature_r_of_v needs 0 < v < v0");
    const RofV q(cfg);
    return q.r(q.p_of(v));
}

double v_of_r(double r, const PositivePairConfig& cfg, double tol)
{
    cfg.validate();
    if (!(r >= 0.0))
        throw DomainError("v_of_r needs r >= 0");
    if (r == 0.0)
        return cfg.v0;
    const RofV q(cfg);
    const double eps = 1e-14 * cfg.v0;
    double lo = q.p_of(cfg.v0 - eps);
    double hi = q.p_of(eps);
    if (q.r(hi) < r)
        throw ConvergenceError("r beyond the bracket (0, v0)");

    double p = std::clamp(q.p_of(lower_bound_v(r, cfg)), lo, hi);
    const double accept = std::max(tol, 1e-12 * (1.0 + r));
    for (int it = 0; it < 200; ++it) {
        const double f = q.r(p) - r;
        if (std::abs(f) < tol)
            return q.v_of(p);
        if (f < 0.0)
            lo = p;
        else
            hi = p;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
            if (std::abs(f) <= accept)
                return q.v_of(p);
            throw ConvergenceError("bracket collapsed before reaching tolerance");
        }
        double next = p - f / q.dr(p);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        p = next;
    }
    throw ConvergenceError("v_of_r exceeded the iteration cap");
}

double v_upp_prime(double v, const PositivePairConfig& cfg)
{
    const double k = 2.0 * cfg.theta - 1.0;
    if (v >= cfg.v0)
        return 0.0;
    const double h = -std::expm1(k * std::log(v / cfg.v0));
    return -std::sqrt(cfg.a() * v * v * v * h);
}

double v_upp_second(double v, const PositivePairConfig& cfg)
{
    const double k = 2.0 * cfg.theta - 1.0;
    return cfg.a() * v * v * (1.5 - (cfg.theta + 1.0) * std::pow(v / cfg.v0, k));
}

double lower_bound_v(double r, const PositivePairConfig& cfg)
{
    const double d = 2.0 / std::sqrt(cfg.v0) + std::sqrt(cfg.a()) * r;
    return 4.0 / (d * d);
}

RadialProfile PairSamples::profile() const
{
    RadialProfile p;
    p.r = r;
    p.v = v_up;
    p.u = u;
    p.n = 1;
    return p;
}

PairSamples integrate_direct(const PositivePairConfig& cfg, std::span<const double> grid,
                             const DirectOptions& opt)
{
    cfg.validate();
    if (grid.empty() || grid.front() != 0.0)
        throw DomainError("direct integration grid must start at r = 0");
    using State = std::array<double, 4>;
    const double a = cfg.a();
    const double c0 = std::pow(cfg.v0, 1.0 - 2.0 * cfg.theta);
    auto rhs = [&](const State& y, State& dy, double) {
        const double v = y[0];
        dy[0] = y[1];
        dy[1] = 1.5 * a * v * v - (cfg.theta + 1.0) * a * c0 * std::pow(v, 2.0 * cfg.theta + 1.0);
        dy[2] = v;
        dy[3] = y[2];
    };
    PairSamples out;
    auto observe = [&](const State& y, double r) {
        out.r.push_back(r);
        out.v_upp.push_back(y[0]);
        out.v_up.push_back(y[2]);
        out.u.push_back(y[3]);
    };
    State y{cfg.v0, 0.0, 0.0, 0.0};
    auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol,
                                           odeint::runge_kutta_fehlberg78<State>());
    try {
        if (grid.size() == 1) {
            observe(y, 0.0);
        } else {
            const double dt = std::min(1e-3, grid[1] - grid[0]);
            odeint::integrate_times(stepper, rhs, y, grid.begin(), grid.end(), dt, observe,
                                    odeint::max_step_checker(opt.max_steps));
        }
    } catch (const odeint::odeint_error& e) {
        throw StepFailure(e.what());
    }
    return out;
}

PairSamples integrate_direct(const PositivePairConfig& cfg, double r_max, std::size_t nodes,
                             const DirectOptions& opt)
{
    if (!(r_max > 0.0))
        throw DomainError("r_max must be > 0");
    const auto grid = linspace(0.0, r_max, std::max<std::size_t>(nodes, 2));
    return integrate_direct(cfg, grid, opt);
}

PairSamples sample_phi(const PositivePairConfig& cfg, std::span<const double> grid)
{
    cfg.validate();
    if (grid.empty() || grid.front() != 0.0)
        throw DomainError("phi grid must start at r = 0");
    PairSamples s;
    s.r.assign(grid.begin(), grid.end());
    const std::size_t n = grid.size();
    s.v_upp.resize(n);
    s.v_up.assign(n, 0.0);
    s.u.assign(n, 0.0);
    std::vector<double> d1(n), d2(n);
    const RofV q(cfg);
    // march node to node: Newton on r(p) using the integral from the previous node
    double p_prev = 0.0, r_prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = grid[i];
        if (i > 0 && !(r > grid[i - 1]))
            throw DomainError("phi grid must increase");
        double p = p_prev;
        if (r > r_prev) {
            p = p_prev + (r - r_prev) / q.dr(p_prev);
            bool done = false;
            for (int it = 0; it < 60 && !done; ++it) {
                const double f = r_prev + q.r_between(p_prev, p) - r;
                double next = p - f / q.dr(p);
                if (!(next > p_prev))
                    next = 0.5 * (p_prev + p);
                done = std::abs(f) <= 1e-14 * std::max(1.0, r) || next == p;
                p = next;
            }
            if (!done)
                throw ConvergenceError("phi sampling did not converge at r = " + std::to_string(r));
        }
        s.v_upp[i] = q.v_of(p);
        d1[i] = v_upp_prime(s.v_upp[i], cfg);
        d2[i] = v_upp_second(s.v_upp[i], cfg);
        r_prev = r;
        p_prev = p;
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double h = grid[i] - grid[i - 1];
        s.v_up[i] = s.v_up[i - 1]
                    + hermite5(h, s.v_upp[i - 1], s.v_upp[i], d1[i - 1], d1[i], d2[i - 1], d2[i]);
        s.u[i] = s.u[i - 1]
                 + hermite5(h, s.v_up[i - 1], s.v_up[i], s.v_upp[i - 1], s.v_upp[i], d1[i - 1], d1[i]);
    }
    return s;
}

RadialProfile build_phi(const PositivePairConfig& cfg, std::span<const double> grid)
{
    return sample_phi(cfg, grid).profile();
}

std::vector<double> default_phi_grid(double r_max, double h, double growth)
{
    if (!(r_max > 0.0) || !(h > 0.0) || !(growth >= 1.0))
        throw ParameterError("bad phi grid parameters");
    std::vector<double> g{0.0};
    double step = h;
    while (g.back() < r_max) {
        double next = g.back() + step;
        if (r_max - next < 0.5 * step)
            next = r_max;
        g.push_back(next);
        if (next >= 1.0)
            step *= growth;
    }
    return g;
}

NegativeOneD negative_one_d(double v0, double lambda, double theta, double v_cut_factor)
{
    if (!(v0 > 0.0) || !(lambda < 0.0) || !(theta > 0.5) || !(v_cut_factor > 2.0))
        throw ParameterError("negative 1-D factor needs v0 > 0, lambda < 0, theta > 1/2");
    const double k = 2.0 * theta - 1.0;
    const double c = 1.0 / std::sqrt(2.0 * -lambda / k * v0);

    using State = std::array<double, 3>;  // r, u', u
    auto stepper = odeint::make_controlled(1e-14, 1e-12, odeint::runge_kutta_fehlberg78<State>());
    State y{0.0, 0.0, 0.0};

    // sigma = v/v0 = 1 + w^2 on [1, 2]
    auto seg1 = [&](const State& s, State& ds, double w) {
        const double g = w < 1e-8 ? 2.0 / std::sqrt(k)
                                  : 2.0 * w
                                        / std::sqrt(std::pow(1.0 + w * w, 3.0)
                                                    * std::expm1(k * std::log1p(w * w)));
        const double sigma = 1.0 + w * w;
        ds[0] = c * g;
        ds[1] = v0 * sigma * ds[0];
        ds[2] = s[1] * ds[0];
    };
    // sigma = e^x beyond 2
    auto seg2 = [&](const State& s, State& ds, double x) {
        const double sigma = std::exp(x);
        ds[0] = c / (std::sqrt(sigma) * std::sqrt(std::expm1(k * x)));
        ds[1] = v0 * sigma * ds[0];
        ds[2] = s[1] * ds[0];
    };
    NegativeOneD out;
    out.profile.n = 1;
    auto observe = [&](const State& s, double) {
        if (!out.profile.r.empty() && s[0] <= out.profile.r.back())
            return;
        out.profile.r.push_back(s[0]);
        out.profile.v.push_back(s[1]);
        out.profile.u.push_back(s[2]);
    };
    const auto w_grid = linspace(0.0, 1.0, 201);
    odeint::integrate_times(stepper, seg1, y, w_grid.begin(), w_grid.end(), 1e-3, observe);
    const double xmax = std::log(v_cut_factor);
    const auto x_grid = linspace(std::log(2.0), xmax, 40 * static_cast<std::size_t>(std::ceil(xmax)) + 1);
    odeint::integrate_times(stepper, seg2, y, x_grid.begin(), x_grid.end(), 1e-3, observe);

    const double sig = v_cut_factor;
    const double F = 1.0 / std::sqrt(1.0 - std::pow(sig, -k));
    out.R = y[0];
    out.up_R = y[1];
    out.u_R = y[2];
    out.v_cut = v_cut_factor * v0;
    out.R_tail = c * F * std::pow(sig, -theta) / theta;
    out.u_tail = out.R_tail * out.up_R + v0 * c * c * F * F * std::pow(sig, 1.0 - 2.0 * theta) / (theta * k);
    out.u_finite = std::isfinite(out.u_R + out.u_tail);
    return out;
}

}  // namespace amte
