#include "amte/phase_plane.hpp"

#include "amte/errors.hpp"
#include "amte/numerics.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>

namespace amte {

PhaseDerivative phase_rhs(double eta, double zeta, double I, const ModelParams& p)
{
    if (!(zeta > 0.0))
        throw DomainError("phase_rhs needs zeta > 0");
    if (!(eta > 1.0))
        throw DomainError("phase_rhs needs eta > 1");
    return {phase_dzeta(eta, zeta, I, p.n, p.theta, p.lambda3), (eta + 1.0) / zeta};
}

std::vector<double> stationary_eta(int n, double theta)
{
    std::vector<double> out{1.0};
    if (n < 2)
        return out;
    const double den = n * theta - (n - 1);
    if (den == 0.0)
        return out;
    const double root = (n * theta - 1) / den;
    if (root > 0.0 && std::abs(root - 1.0) > 1e-14)
        out.push_back(root);
    std::sort(out.begin(), out.end());
    return out;
}

double forced_phi_prime(double eta, double phi, int n, double theta, int branch)
{
    const double zeta = branch * std::pow(eta, theta + 1) * std::sqrt(phi);
    return 2.0 * std::pow(eta, -2.0 * (theta + 1))
           * (zeta * linear_coeff(eta, n, theta) + zero_order(eta, n, theta));
}

BernsteinReport bernstein_radial_check(int n, double theta, Window window, int samples,
                                       const BernsteinOptions& opt)
{
    if (n < 3)
        throw ParameterError("radial Bernstein check needs n >= 3");
    if (!(theta > 0.0))
        throw ParameterError("theta must be > 0");
    if (!(window.hi > window.lo) || samples < 1)
        throw ParameterError("empty window");

    std::vector<double> trial = opt.trial_phi;
    if (trial.empty()) {
        trial.push_back(0.0);
        for (double p : logspace(1e-12, 1e2, 15))
            trial.push_back(p);
    }

    BernsteinReport rep;
    rep.n = n;
    rep.theta = theta;
    rep.window = window;
    rep.samples = samples;
    for (double s : stationary_eta(n, theta))
        if (s > window.lo && s < window.hi && s != 1.0)
            rep.stationary.push_back(s);

    bool all_contradict = true;
    for (int i = 0; i < samples; ++i) {
        const double eta = window.lo + (window.hi - window.lo) * (i + 0.5) / samples;
        if (eta == 1.0)
            continue;
        const int branch = eta > 1.0 ? 1 : -1;
        const int wanted = eta > 1.0 ? -1 : 1;
        int lo = 2, hi = -2;
        for (double phi : trial) {
            const double d = forced_phi_prime(eta, phi, n, theta, branch);
            const int s = (d > 0) - (d < 0);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        const int sign = lo == hi ? lo : 0;
        rep.witnesses.push_back({eta, sign});
        if (sign != wanted)
            all_contradict = false;
    }
    const bool near_one = window.lo > 1.0 - opt.delta && window.hi < 1.0 + opt.delta;
    if (all_contradict) {
        rep.status = BernsteinStatus::pass;
    } else if (!rep.stationary.empty() && !near_one) {
        rep.status = BernsteinStatus::stationary_crossing;
    } else {
        rep.status = BernsteinStatus::fail;
    }
    rep.pass = rep.status != BernsteinStatus::fail;
    return rep;
}

std::string to_string(BernsteinStatus s)
{
    switch (s) {
    case BernsteinStatus::pass:
        return "pass";
    case BernsteinStatus::fail:
        return "fail";
    case BernsteinStatus::stationary_crossing:
        return "stationary_crossing";
    }
    return "fail";
}

std::string to_json(const BernsteinReport& r)
{
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["theta"] = r.theta;
    j["window"] = {r.window.lo, r.window.hi};
    j["samples"] = r.samples;
    j["pass"] = r.pass;
    j["status"] = to_string(r.status);
    j["stationary"] = r.stationary;
    auto& w = j["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& x : r.witnesses)
        w.push_back({{"eta", x.eta}, {"forced_sign", x.forced_sign}});
    return j.dump(2);
}

std::vector<NodeResidual> power_solution_residual(int k, double theta, double C,
                                                  std::span<const double> nodes)
{
    if (k < 2)
        throw ParameterError("power solutions need k >= 2");
    const int N = 2 * k;
    const double affine = static_cast<double>(N + 1) / (N + 2);
    if (std::abs(theta - affine) > 1e-12)
        throw ParameterError("power solutions need theta = (N+1)/(N+2)");
    for (double r : nodes)
        if (!(r > 0.0))
            throw DomainError("power-solution nodes must exclude the origin");
    const double p = 2.0 * k * k;
    auto u = [=](double r) { return C * std::pow(r, p); };
    JetOptions opt;
    opt.h_rel = 0.5 / p;
    return radial_residual(u, nodes, theta, N, 0.0, opt);
}

}  // namespace amte
