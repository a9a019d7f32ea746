#pragma once

#include "amte/numerics.hpp"
#include "amte/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace amte {

/// Printed closed forms: alpha0, beta0 and gamma = 48 gamma_ab / (80 + n(n-2)).
TaylorData taylor_coeffs(int n, double theta);

/// zeta''(1), zeta'''(1), zeta''''(1) of the local solution from its power series.
TaylorData series_taylor(int n, double theta);
/// zeta^(5)(1) from the same series.
double series_fifth(int n, double theta);

/// lambda * Phi(1+) target: 4 + n(n-2)/2 as printed, or n(n+2)/2, the value that
/// keeps zeta'(1) = 2 under the mapping.
enum class CalibrationLimit { printed, consistent };
double calibration_target(int n, CalibrationLimit limit);

/// A function on [1, eta0] held by its values at Chebyshev-Lobatto nodes.
struct Candidate {
    Chebyshev grid{2, 1.0, 2.0};
    Eigen::VectorXd values;

    Candidate() = default;
    Candidate(const Chebyshev& g, Eigen::VectorXd v) : grid(g), values(std::move(v)) {}
    static Candidate sample(const Chebyshev& g, const ScalarFn& f);

    double operator()(double eta, int k = 0) const;
    /// k-th derivative at the nodes.
    Eigen::VectorXd nodal_derivative(int k) const;
    double eta0() const { return grid.b(); }
};

/// 2(eta-1) + (alpha/2)(eta-1)^2 + (beta/6)(eta-1)^3
Candidate taylor_seed(const Chebyshev& grid, const TaylorData& t);

struct Calibration {
    double lambda = 0.0;
    double phi_limit = 0.0;           // Phi(1+)
    Eigen::VectorXd J;                // regular part of the exponent, J(eta0) = 0
    Eigen::VectorXd Phi;              // e^I / phi at the nodes
};

/// lambda(phi, eta0) from the eta -> 1+ limit of lambda * e^{I}/phi.
Calibration calibrate(const Candidate& phi, int n, CalibrationLimit limit = CalibrationLimit::printed);
double calibrate_lambda(const Candidate& phi, int n, CalibrationLimit limit = CalibrationLimit::printed);

/// lambda * e^{I(eta)} / phi(eta) at an arbitrary eta in (1, eta0].
double calibration_product(const Candidate& phi, const Calibration& cal, double eta);

struct MappedCandidate {
    Candidate zeta;
    double lambda = 0.0;
    Calibration calibration;
};

/// zeta = T phi: zeta(1) = 0 and zeta' given by the explicit right side built from phi.
MappedCandidate apply_T(const Candidate& phi, const ModelParams& params,
                        CalibrationLimit limit = CalibrationLimit::printed);

struct GammaSetSpec {
    double eta0 = 1.05;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double sigma = 0.5;
};

struct BandCheck {
    std::string name;
    bool holds = false;
    double lo = 0.0;
    double hi = 0.0;
    double observed_min = 0.0;
    double observed_max = 0.0;
};

struct MembershipReport {
    std::vector<BandCheck> checks;
    bool core = false;   // every band except the fourth-derivative quotient
    bool gamma = false;  // fourth-derivative quotient band
    bool all() const { return core && gamma; }
};

MembershipReport membership(const Candidate& phi, const GammaSetSpec& spec, std::size_t samples = 401);

/// Lower and upper bounds on lambda for members of the band set, evaluated with alpha + sigma.
struct LambdaBounds {
    double lo = 0.0;
    double hi = 0.0;
};
LambdaBounds lambda_bounds(int n, double alpha_plus_sigma, double eta0, double target);

enum class TaylorSource { printed, series };

struct FixedPointOptions {
    double tol = 1e-10;
    int max_iter = 200;
    double damping = 0.5;
    double sigma = 0.5;
    int order = 16;
    CalibrationLimit limit = CalibrationLimit::printed;
    TaylorSource bands = TaylorSource::printed;
    double x_min_rel = 1e-8;       // first curve sample at 1 + x_min_rel (eta0 - 1)
    int samples_per_decade = 100;  // in log(eta - 1)
};

struct LocalSolve {
    PhaseCurve curve;
    double lambda_cal = 0.0;
    int iterations = 0;
    std::vector<double> contraction_history;
    TaylorData taylor;
    GammaSetSpec bands;
    MembershipReport membership;
    LambdaBounds bounds;
    Candidate fixed_point;
    Candidate ratio;  // zeta/(eta-1), regular at eta = 1

    double zeta(double eta, int k = 0) const { return fixed_point(eta, k); }
};

LocalSolve fixed_point_solve(int n, double theta, double eta0, const FixedPointOptions& opt = {});

struct GlobalOptions {
    int samples_per_decade = 100;  // in log(eta - 1)
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
};

/// Local samples plus the integration of (zeta, I) from eta0 to eta_max.
PhaseCurve extend_global(const LocalSolve& local, double eta_max, const GlobalOptions& opt = {});

struct GrowthReport {
    double rho = 0.0;
    double eps0 = 0.0;
    double eta1 = 0.0;
    std::optional<double> eta2;
    bool quadratic_certified = false;
    bool upper_claimed = false;
    std::vector<BoundEntry> bounds;

    const BoundEntry* find(const std::string& id) const;
};

/// Witnesses for zeta >= rho (eta-1), zeta > eps0 eta^2 beyond eta1, zeta <= eta^2 beyond eta2.
GrowthReport growth_bounds_check(const PhaseCurve& curve, int n, double theta);

struct BlowupTime {
    double T_inf = 0.0;
    double tail_bound = 0.0;
    double T_partial = 0.0;
    double eps0 = 0.0;
};

/// int_{eta0}^{eta_max} ds/zeta plus the tail 1/(eps0 eta_max).
BlowupTime blowup_time(const PhaseCurve& curve, double eta0);

struct PhaseResidual {
    double eta;
    double residual;
    double scale;
    double relative() const { return std::abs(residual) / (1.0 + scale); }
};

/// -zeta zeta' + (theta+1) zeta^2/eta + zeta A + g - lambda3 eta^2 e^I with zeta' from
/// local polynomial differentiation of the samples; nodes with eta - 1 < x_floor are skipped.
std::vector<PhaseResidual> phase_residual(const PhaseCurve& curve, std::size_t width = 9,
                                          double x_floor = 1e-6);

std::string to_json(const LocalSolve& local, const GrowthReport* growth = nullptr,
                    const BlowupTime* blowup = nullptr);

}  // namespace amte
