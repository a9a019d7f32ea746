#pragma once

#include "amte/numerics.hpp"
#include "amte/types.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace amte {

/// u', u'', u''', u'''' of a radial function at r.
struct RadialJet {
    double r;
    double d1, d2, d3, d4;
};

template <class S>
struct RadialTerms {
    S value;  // LHS - lambda'*(u'')^2
    S scale;  // sum of |terms|
};

/// Left side of the radial eigen-ODE minus lambda'*(u'')^2, with the
/// term magnitudes for relative tolerances.
template <class S>
RadialTerms<S> radial_terms(S r, S u1, S u2, S u3, S u4, S theta, int n, S lambda_prime)
{
    using std::abs;
    const S m = S(n - 1);
    const S q = u2 / u1;
    const S t1 = -u4;
    const S t2 = (theta + 1) * u3 * u3 / u2;
    const S t3 = 2 * m * u3 * ((theta - 1) * q - theta / r);
    const S t4 = m * u2 * (q - 1 / r) * ((m * theta - (S(n) - 2)) * q - (m * theta - 1) / r);
    const S t5 = -lambda_prime * u2 * u2;
    return {t1 + t2 + t3 + t4 + t5, abs(t1) + abs(t2) + abs(t3) + abs(t4) + abs(t5)};
}

inline RadialTerms<double> radial_terms(const RadialJet& j, double theta, int n, double lambda_prime)
{
    return radial_terms<double>(j.r, j.d1, j.d2, j.d3, j.d4, theta, n, lambda_prime);
}

struct JetOptions {
    std::size_t width = 9;   // stencil points on sampled data
    double r_floor = 1e-3;   // nodes closer to the origin are skipped
    double h_rel = 2e-2;     // initial Richardson step for callables, relative to r
};

/// Jets at the interior nodes of a sampled profile (derivatives of v = u').
std::vector<RadialJet> profile_jets(const RadialProfile& p, const JetOptions& opt = {});
/// Jet of a closed-form u at r by extrapolated central differences.
RadialJet function_jet(const ScalarFn& u, double r, const JetOptions& opt = {});

struct NodeResidual {
    double r;
    double residual;
    double scale;
    double relative() const { return std::abs(residual) / (scale > 0 ? scale : 1.0); }
};

std::vector<NodeResidual> radial_residual(const RadialProfile& p, double theta, int n,
                                          double lambda_prime, const JetOptions& opt = {});
std::vector<NodeResidual> radial_residual(const ScalarFn& u, std::span<const double> nodes,
                                          double theta, int n, double lambda_prime,
                                          const JetOptions& opt = {});

struct PhasePoint {
    double r;
    double eta;
    double zeta;
};

/// eta = r v'/v and zeta = r d(eta)/dr on the profile grid.
std::vector<PhasePoint> profile_to_phase(const RadialProfile& p, const JetOptions& opt = {});
std::vector<PhasePoint> profile_to_phase(const ScalarFn& v, std::span<const double> nodes,
                                         const JetOptions& opt = {});

struct LambdaFit {
    double lambda_prime = 0.0;
    double fit_residual = 0.0;  // max relative deviation of nodal values
    double eigenvalue = 0.0;    // theta * lambda_prime
    std::size_t nodes = 0;
};

struct FitOptions {
    JetOptions jets;
    double spread_threshold = 1e-3;
    double r_min = 0.0;
    double r_max = std::numeric_limits<double>::infinity();
};

LambdaFit effective_lambda_fit(const RadialProfile& p, double theta, int n, const FitOptions& opt = {});

/// Fill p.derivative_samples at r = 0 (one-sided) and interior nodes.
void attach_derivative_samples(RadialProfile& p, std::size_t width = 9);

/// One-sided FD derivatives 0..4 of v at r = 0 plus a noise/truncation bound.
struct OriginDerivatives {
    double d[5];
    double tol[5];
};
OriginDerivatives origin_derivatives(const RadialProfile& p, std::size_t width = 9);

}  // namespace amte
