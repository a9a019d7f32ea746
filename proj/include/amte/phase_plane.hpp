#pragma once

#include "amte/core.hpp"
#include "amte/types.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace amte {

/// [2n theta - (2n-1)] eta - [2n theta - 1]
template <class S>
S linear_coeff(S eta, int n, S theta)
{
    return (2 * n * theta - (2 * n - 1)) * eta - (2 * n * theta - 1);
}

/// [n theta - (n-1)] eta - [n theta - 1]
template <class S>
S stationary_factor(S eta, int n, S theta)
{
    return (n * theta - (n - 1)) * eta - (n * theta - 1);
}

/// n eta (eta - 1) {[n theta - (n-1)] eta - [n theta - 1]}
template <class S>
S zero_order(S eta, int n, S theta)
{
    return n * eta * (eta - 1) * stationary_factor(eta, n, theta);
}

/// dzeta/deta of the phase equation with right side lambda3 eta^2 e^I.
template <class S>
S phase_dzeta(S eta, S zeta, S I, int n, S theta, S lambda3)
{
    using std::exp;
    return (theta + 1) * zeta / eta + linear_coeff(eta, n, theta)
           + (zero_order(eta, n, theta) - lambda3 * eta * eta * exp(I)) / zeta;
}

struct PhaseDerivative {
    double dzeta;
    double dI;
};

PhaseDerivative phase_rhs(double eta, double zeta, double I, const ModelParams& params);

/// Stationary solutions zeta = 0 of the homogeneous equation, ascending.
std::vector<double> stationary_eta(int n, double theta);

struct Window {
    double lo;
    double hi;
};

struct BernsteinWitness {
    double eta;
    int forced_sign;  // sign of phi' for every trial phi, 0 if mixed
};

enum class BernsteinStatus { pass, fail, stationary_crossing };

struct BernsteinReport {
    int n = 0;
    double theta = 0.0;
    Window window{};
    int samples = 0;
    bool pass = false;
    BernsteinStatus status = BernsteinStatus::fail;
    std::vector<double> stationary;
    std::vector<BernsteinWitness> witnesses;
};

struct BernsteinOptions {
    double delta = 0.05;
    std::vector<double> trial_phi;  // empty: 0 plus a log grid on [1e-12, 1e2]
};

/// phi' forced by the homogeneous equation for phi = eta^{-2(theta+1)} zeta^2.
/// branch = +1 for zeta > 0, -1 for zeta < 0.
double forced_phi_prime(double eta, double phi, int n, double theta, int branch);

BernsteinReport bernstein_radial_check(int n, double theta, Window window, int samples,
                                       const BernsteinOptions& opt = {});

std::string to_json(const BernsteinReport& r);
std::string to_string(BernsteinStatus s);

/// Residual of u = C r^{2k^2} in dimension 2k at theta = (2k+1)/(2k+2).
std::vector<NodeResidual> power_solution_residual(int k, double theta, double C,
                                                  std::span<const double> nodes);

}  // namespace amte
