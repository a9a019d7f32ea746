#pragma once

#include "amte/core.hpp"
#include "amte/reconstruct.hpp"
#include "amte/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace amte {

/// u, u', u'' of a sampled radial profile at any r >= 0, from the even extension of u.
/// u'' interpolates nodal derivatives of u' instead of differentiating the interpolant.
class RadialEvaluator {
public:
    struct Value {
        double u, d1, d2;
    };

    explicit RadialEvaluator(const RadialProfile& p, std::size_t width = 9);
    Value operator()(double r) const;
    double r_max() const { return r_max_; }

private:
    std::vector<double> r_, v_, u_, dv_;
    std::size_t width_;
    double r_max_;
};

struct AssembleOptions {
    FitOptions phi_fit;
    FitOptions psi_fit;
};

/// kappa = lambda_phi / (-lambda_psi); the phi factor is multiplied by kappa when evaluated.
SeparableSolution assemble(const RadialProfile& phi, const RadialProfile& psi, int m_cylinder,
                           double theta, double R_inf, const AssembleOptions& opt = {});

/// Hessian and w = det^{-theta} of the assembled solution at a point (x, y, z).
class AssembledEvaluator {
public:
    explicit AssembledEvaluator(const SeparableSolution& s);

    int dim() const { return dim_; }
    Eigen::MatrixXd hessian(const Eigen::VectorXd& X) const;
    double w(const Eigen::VectorXd& X) const;
    double u(const Eigen::VectorXd& X) const;

private:
    const SeparableSolution& s_;
    bool has_phi_;
    RadialEvaluator phi_, psi_;
    int dim_;
};

struct SampleOptions {
    double x_max = 8.0;          // |x| range, capped below the end of the phi grid
    double boundary_margin = 0.05;  // relative distance kept from |y| = R_inf
    double h = 1e-3;             // FD step, also sets the excluded ball around y = 0
};

std::vector<Eigen::VectorXd> sample_points(const SeparableSolution& s, std::size_t count,
                                           std::uint64_t seed = 1, const SampleOptions& opt = {});

struct ResidualOptions {
    double h = 1e-3;
    bool richardson = true;
    double tolerance = 1e-4;
};

/// u^{ij} D_ij w with D^2 w from nested central differences.
VerificationReport full_residual(const SeparableSolution& s, const std::vector<Eigen::VectorXd>& points,
                                 const ResidualOptions& opt = {});

/// Contribution of each coordinate block to u^{ij} D_ij w at one point, in order x, y, z.
std::vector<double> block_contributions(const SeparableSolution& s, const Eigen::VectorXd& X,
                                        const ResidualOptions& opt = {});

struct ConvexityReport {
    double min_eigenvalue = 0.0;
    std::vector<double> per_point;
};
ConvexityReport convexity_check(const SeparableSolution& s, const std::vector<Eigen::VectorXd>& points);

struct CompletenessReport {
    bool pass = false;
    bool phi_side = false;
    bool psi_side = false;
    double phi_slope = 0.0;  // kappa phi' at the end of the phi grid
    LargeConditionReport psi;
    std::string witness;
};
CompletenessReport completeness_check(const SeparableSolution& s, double ceiling = 1e6);

struct Bernstein1DCase {
    std::string domain;  // "R", "[0,1]", "[0,inf)"
    double C2 = 0.0;
    double C3 = 0.0;
    bool convex = false;
    bool large = false;
    bool quadratic = false;
    std::string reason;
};

struct Bernstein1DReport {
    double theta = 0.0;
    bool pass = false;
    std::vector<Bernstein1DCase> cases;
};

/// Case analysis of (u'')^{-theta} = -theta C2 x + C3 on R, [0,1] and [0, inf).
Bernstein1DReport bernstein_1d_check(double theta);

std::string to_json(const SeparableSolution& s);
SeparableSolution solution_from_json(const std::string& text);
std::string to_json(const VerificationReport& r);
std::string to_json(const Bernstein1DReport& r);

}  // namespace amte
