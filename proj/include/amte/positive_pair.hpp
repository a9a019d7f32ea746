#pragma once

#include "amte/types.hpp"

#include <span>
#include <vector>

namespace amte {

/// 1-D factor with v = u'' solving v'^2 = a (v^3 - v0^{1-2theta} v^{2(theta+1)}).
/// Throughout this header v_upp denotes u'' and v_up denotes u'.
struct PositivePairConfig {
    double v0 = 1.0;
    double lambda = 0.05;
    double theta = 0.55;

    double a() const { return 2.0 * lambda / (2.0 * theta - 1.0); }
    void validate() const;
};

/// r at which u'' has dropped from v0 to v.
double quadrature_r_of_v(double v, const PositivePairConfig& cfg);

/// Inverse of quadrature_r_of_v; the bracket on (eps, v0 - eps) is kept throughout.
double v_of_r(double r, const PositivePairConfig& cfg, double tol = 1e-10);

/// d(v_upp)/dr and d^2(v_upp)/dr^2 expressed through v_upp.
double v_upp_prime(double v, const PositivePairConfig& cfg);
double v_upp_second(double v, const PositivePairConfig& cfg);

/// 4 / (2/sqrt(v0) + sqrt(a) r)^2
double lower_bound_v(double r, const PositivePairConfig& cfg);

struct PairSamples {
    std::vector<double> r;
    std::vector<double> v_upp;
    std::vector<double> v_up;
    std::vector<double> u;

    RadialProfile profile() const;
};

struct DirectOptions {
    double rel_tol = 1e-13;
    double abs_tol = 1e-15;
    std::size_t max_steps = 1000000;
};

/// Direct integration of v'' = (3a/2) v^2 - (theta+1) a v0^{1-2theta} v^{2theta+1}
/// from v(0) = v0, v'(0) = 0, together with u' and u.
PairSamples integrate_direct(const PositivePairConfig& cfg, std::span<const double> grid,
                             const DirectOptions& opt = {});
PairSamples integrate_direct(const PositivePairConfig& cfg, double r_max, std::size_t nodes = 1001,
                             const DirectOptions& opt = {});

/// u' and u from the quadrature solution by quintic Hermite accumulation.
PairSamples sample_phi(const PositivePairConfig& cfg, std::span<const double> grid);
RadialProfile build_phi(const PositivePairConfig& cfg, std::span<const double> grid);

/// Uniform spacing h up to r = 1, then geometric growth of the spacing.
std::vector<double> default_phi_grid(double r_max, double h = 1e-2, double growth = 1.01);

/// Finite-R behaviour of the 1-D factor with lambda < 0 (v grows from v0 to infinity).
struct NegativeOneD {
    double R = 0.0;        // truncated radius
    double R_tail = 0.0;   // bound on the missing part of R
    double u_R = 0.0;      // u at the truncation radius
    double u_tail = 0.0;   // bound on u(R-) - u_R
    double up_R = 0.0;     // u' at the truncation radius
    double v_cut = 0.0;    // truncation value of u''
    bool u_finite = false; // u_R + u_tail < infinity
    RadialProfile profile; // samples of (r, u', u) up to the truncation radius
};

NegativeOneD negative_one_d(double v0, double lambda, double theta, double v_cut_factor = 1e8);

}  // namespace amte
