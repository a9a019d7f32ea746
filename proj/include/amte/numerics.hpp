#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace amte {

using ScalarFn = std::function<double(double)>;

/// Finite-difference weights for derivatives 0..m at z from arbitrary nodes.
/// Column k holds the weights of the k-th derivative.
Eigen::MatrixXd fornberg_weights(double z, std::span<const double> x, int m);

/// First index of a width-point stencil of sorted xs centred on z.
std::size_t stencil_start(std::span<const double> xs, double z, std::size_t width);

/// Derivatives 0..m at z of the local interpolant through `width` nearest nodes.
Eigen::VectorXd local_derivatives(std::span<const double> xs, std::span<const double> fs, double z,
                                  int m, std::size_t width = 9);

double local_interpolate(std::span<const double> xs, std::span<const double> fs, double z,
                         std::size_t width = 8);

/// Running integral F_k = int_{x_0}^{x_k} f of sampled data, integrating the
/// local interpolant of each interval with 4-point Gauss-Legendre.
std::vector<double> cumulative_integral(std::span<const double> xs, std::span<const double> fs,
                                        std::size_t width = 6);

struct DerivativeEstimate {
    double value;
    double error;
};

/// Central difference of order k in {1,2,3,4} extrapolated in h (Ridders).
DerivativeEstimate richardson_derivative(const ScalarFn& f, double x, int k, double h);

/// Adaptive Gauss-Kronrod on [a, b].
double integrate(const ScalarFn& f, double a, double b, double rel_tol = 1e-13,
                 double* error = nullptr);

/// Chebyshev-Lobatto collocation on [a, b]; nodes ascend from a to b.
class Chebyshev {
public:
    Chebyshev(int order, double a, double b);

    int order() const { return N_; }
    double a() const { return a_; }
    double b() const { return b_; }
    const Eigen::VectorXd& nodes() const { return x_; }
    const Eigen::MatrixXd& diff() const { return D_; }
    /// (Q f)_j = int_a^{x_j} f.
    const Eigen::MatrixXd& cumint() const { return Q_; }

    Eigen::VectorXd coefficients(const Eigen::VectorXd& values) const;
    /// k-th derivative at x of the interpolant of `values`.
    double eval(const Eigen::VectorXd& values, double x, int k = 0) const;
    Eigen::VectorXd sample(const std::function<double(double)>& f) const;

private:
    int N_;
    double a_, b_;
    Eigen::VectorXd x_;
    Eigen::MatrixXd D_, Q_, Vinv_;
};

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double a, double b, std::size_t n);

}  // namespace amte
