#pragma once

#include "amte/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace amte {

/// t = int_{eta0}^{eta} ds/zeta together with the quantities needed to rebuild v and u.
/// sigma = log(eta - 1); U = int_{-inf}^{t} e^{I} dt, so that u = v0 r0 U.
struct TimeSamples {
    std::vector<double> sigma;
    std::vector<double> t;
    std::vector<double> I;
    std::vector<double> U;
    double eta0 = 0.0;
    std::optional<double> T_inf;  // set when the quadratic tail bound is certified

    std::size_t size() const { return t.size(); }
};

TimeSamples t_of_eta(const PhaseCurve& curve, double eta0);

/// Values of eta, I, U at t = log(r/r0); below the first sample the
/// local behaviour eta - 1 ~ e^{2t} is used.
struct TimePoint {
    double x;  // eta - 1
    double I;
    double U;
};
TimePoint evaluate_at(const TimeSamples& ts, double t);

/// eta-bar(r) - 1, anchored at eta-bar(r0) = eta0.
std::vector<double> etabar_minus_one(const TimeSamples& ts, std::span<const double> r, double r0 = 1.0);
std::vector<double> etabar_of_r(const PhaseCurve& curve, std::span<const double> r, double r0 = 1.0);

/// Scan of (eta-bar - 1)/r^2 and (eta-bar - 1)/r^{2 alpha'} on (0, r_max].
struct OriginBound {
    double C = 0.0;
    double alpha_prime = 0.9;
    double C_alpha = 0.0;
    double limit = 0.0;  // ratio at the smallest scanned radius
    bool holds = false;
    std::vector<double> r;
    std::vector<double> ratio;
};
OriginBound origin_bound_scan(const TimeSamples& ts, double r0 = 1.0, double r_max = 0.1,
                              std::size_t samples = 200, double alpha_prime = 0.9);

/// Uniform spacing h on [0, r_uniform], then the images r0 e^{t_k} of the curve nodes.
std::vector<double> default_profile_grid(const TimeSamples& ts, double r0 = 1.0, double h = 2e-3,
                                         double r_uniform = 0.2);

RadialProfile rebuild_profile(const PhaseCurve& curve, double v0 = 1.0, double r0 = 1.0);
RadialProfile rebuild_profile(const PhaseCurve& curve, double v0, double r0, std::span<const double> grid);
RadialProfile rebuild_profile(const TimeSamples& ts, int n, double v0, double r0, std::span<const double> grid);

/// eta = 1: v = (v0/r0) r, u = (v0/(2 r0)) r^2.
RadialProfile rebuild_degenerate(int n, double v0, double r0, std::span<const double> grid);

/// u at distances d = 10^{-j} from R_inf; ratios of successive per-decade increments.
/// A ratio near 1 is the signature of logarithmic divergence, a ratio well below 1 of a finite limit.
struct DivergenceTest {
    std::vector<double> distance;
    std::vector<double> u;
    std::vector<double> increment;
    std::vector<double> ratio;
    bool divergent = false;
    std::string witness;
};
DivergenceTest boundary_divergence(const RadialProfile& p, double R_inf, double threshold = 0.9);

struct LargeConditionReport {
    bool pass = false;
    bool finite_boundary = true;
    BoundEntry lower_bound;  // v >= v0 (T - log r0)/(T - log r) on r >= r0
    DivergenceTest divergence;
    double ceiling = 1e6;
    double decades_to_ceiling = 0.0;  // extrapolated with the last increment
    std::string witness;
};
LargeConditionReport large_condition_check(const RadialProfile& p, double R_inf, double r0 = 1.0,
                                           double ceiling = 1e6);

}  // namespace amte
