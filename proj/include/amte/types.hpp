#pragma once

#include <string>
#include <vector>

namespace amte {

/// Parameters of one radial factor and its phase-plane equation.
/// lambda3 < 0 for the negative pair, > 0 for the positive pair.
struct ModelParams {
    int n = 2;
    double theta = 0.55;
    double lambda3 = 0.0;
    double eta0 = 1.05;

    void validate() const;
    /// Extra hypotheses of the local/global negative-pair construction.
    void validate_negative(bool upper_bounds = false) const;
    bool upper_bound_claimed() const;
};

/// Derivatives of zeta at the singular point eta = 1.
struct TaylorData {
    double d1 = 2.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

struct PhaseSample {
    double eta;
    double zeta;
    double I;
};

/// Sampled solution zeta(eta) of the phase-plane equation with
/// I(eta) = int_{eta0}^{eta} (s+1)/zeta(s) ds.
struct PhaseCurve {
    ModelParams params;
    TaylorData taylor;
    std::vector<PhaseSample> samples;
    double eta_max = 0.0;

    void validate() const;
    std::vector<double> etas() const;
    std::vector<double> zetas() const;
    std::vector<double> integrals() const;
};

/// Centered finite-difference estimates of v', v'', v''', v'''' (v = u').
struct DerivativeSamples {
    std::vector<double> r;
    std::vector<double> d1, d2, d3, d4;
};

/// One radial factor sampled on a grid: v = u', u(0) = 0.
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> v;
    std::vector<double> u;
    int n = 1;
    DerivativeSamples derivative_samples;

    std::size_t size() const { return r.size(); }
    void validate() const;
};

/// u(x, y, z) = kappa*phi(|x|) + psi(|y|) + |z|^2/2 on R x B_{R_inf} x R^m.
struct SeparableSolution {
    RadialProfile phi;
    RadialProfile psi;
    double kappa = 1.0;
    double R_inf = 0.0;
    double theta = 0.0;
    int n = 1;
    int m = 0;
    int N = 2;
    double lambda_phi = 0.0;
    double lambda_psi = 0.0;
};

struct BoundEntry {
    std::string id;
    bool holds = false;
    double lo = 0.0;
    double hi = 0.0;
    double margin = 0.0;
};

struct BlowupData {
    double T_inf = 0.0;
    double R_inf = 0.0;
    double tail_error = 0.0;
};

struct VerificationReport {
    double residual_max = 0.0;
    double residual_mean = 0.0;
    double convexity_margin = 0.0;
    std::vector<BoundEntry> bounds;
    BlowupData blowup;
    double effective_lambda = 0.0;
    double effective_lambda_spread = 0.0;
    std::size_t points = 0;
    double residual_tolerance = 1e-4;
    std::vector<double> point_residuals;  // |u^{ij} D_ij w| / sum |u^{ij} D_ij w|
};

}  // namespace amte
