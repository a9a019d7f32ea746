#include "amte/numerics.hpp"

#include "amte/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace amte {

Eigen::MatrixXd fornberg_weights(double z, std::span<const double> x, int m)
{
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, m + 1);
    double c1 = 1.0;
    double c4 = x[0] - z;
    c(0, 0) = 1.0;
    for (Eigen::Index i = 1; i < n; ++i) {
        const int mn = static_cast<int>(std::min<Eigen::Index>(i, m));
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
                c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k)
                c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
            c(j, 0) = c4 * c(j, 0) / c3;
        }
        c1 = c2;
    }
    return c;
}

std::size_t stencil_start(std::span<const double> xs, double z, std::size_t width)
{
    if (xs.size() < width)
        throw GridTooCoarse("stencil wider than grid");
    const auto it = std::lower_bound(xs.begin(), xs.end(), z);
    const auto idx = static_cast<std::ptrdiff_t>(it - xs.begin());
    std::ptrdiff_t start = idx - static_cast<std::ptrdiff_t>(width / 2);
    // for an exact node hit with odd width, keep the node in the centre
    if (it != xs.end() && *it == z && width % 2 == 1)
        start = idx - static_cast<std::ptrdiff_t>(width / 2);
    start = std::clamp<std::ptrdiff_t>(start, 0, static_cast<std::ptrdiff_t>(xs.size() - width));
    return static_cast<std::size_t>(start);
}

Eigen::VectorXd local_derivatives(std::span<const double> xs, std::span<const double> fs, double z,
                                  int m, std::size_t width)
{
    const std::size_t s = stencil_start(xs, z, width);
    const Eigen::MatrixXd w = fornberg_weights(z, xs.subspan(s, width), m);
    const Eigen::Map<const Eigen::VectorXd> f(fs.data() + s, static_cast<Eigen::Index>(width));
    return w.transpose() * f;
}

double local_interpolate(std::span<const double> xs, std::span<const double> fs, double z,
                         std::size_t width)
{
    return local_derivatives(xs, fs, z, 0, width)(0);
}

std::vector<double> cumulative_integral(std::span<const double> xs, std::span<const double> fs,
                                        std::size_t width)
{
    static constexpr std::array<double, 4> gx{-0.8611363115940526, -0.3399810435848563,
                                              0.3399810435848563, 0.8611363115940526};
    static constexpr std::array<double, 4> gw{0.3478548451374538, 0.6521451548625461,
                                              0.6521451548625461, 0.3478548451374538};
    const std::size_t n = xs.size();
    std::vector<double> F(n, 0.0);
    if (n < 2)
        return F;
    width = std::min(width, n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double a = xs[k];
        const double b = xs[k + 1];
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        const std::size_t s = stencil_start(xs, mid, width);
        const auto nodes = xs.subspan(s, width);
        double sum = 0.0;
        for (std::size_t q = 0; q < gx.size(); ++q) {
            const Eigen::MatrixXd w = fornberg_weights(mid + half * gx[q], nodes, 0);
            double fq = 0.0;
            for (std::size_t i = 0; i < width; ++i)
                fq += w(static_cast<Eigen::Index>(i), 0) * fs[s + i];
            sum += gw[q] * fq;
        }
        F[k + 1] = F[k] + half * sum;
    }
    return F;
}

namespace {

double central_difference(const ScalarFn& f, double x, int k, double h)
{
    switch (k) {
    case 1:
        return (f(x + h) - f(x - h)) / (2.0 * h);
    case 2:
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    case 3:
        return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) / (2.0 * h * h * h);
    case 4:
        return (f(x + 2 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) + f(x - 2 * h))
               / (h * h * h * h);
    default:
        throw ParameterError("derivative order must be 1..4");
    }
}

}  // namespace

DerivativeEstimate richardson_derivative(const ScalarFn& f, double x, int k, double h)
{
    constexpr int ntab = 12;
    constexpr double con = 1.4;
    constexpr double con2 = con * con;
    std::array<std::array<double, ntab>, ntab> a{};
    double hh = h;
    a[0][0] = central_difference(f, x, k, hh);
    double err = std::numeric_limits<double>::max();
    double ans = a[0][0];
    for (int i = 1; i < ntab; ++i) {
        hh /= con;
        a[0][i] = central_difference(f, x, k, hh);
        double fac = con2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= con2;
            const double errt =
                std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
            if (errt <= err) {
                err = errt;
                ans = a[j][i];
            }
        }
        if (std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * err)
            break;
    }
    return {ans, err};
}

double integrate(const ScalarFn& f, double a, double b, double rel_tol, double* error)
{
    double err = 0.0;
    double value = 0.0;
    if (std::isfinite(a) && std::isfinite(b)) {
        // on [-1, 1] the local error estimates and the tolerance share one scale
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        auto g = [&](double x) { return half * f(mid + half * x); };
        value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, -1.0, 1.0, 12, rel_tol, &err);
        if (!(err <= rel_tol * std::abs(value))) {
            // endpoint singularities: tanh-sinh never evaluates the endpoints
            double ts_err = 0.0;
            boost::math::quadrature::tanh_sinh<double> ts;
            const double ts_value = ts.integrate(g, -1.0, 1.0, rel_tol, &ts_err);
            if (std::isfinite(ts_value) && ts_err < err) {
                value = ts_value;
                err = ts_err;
            }
        }
    } else {
        value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, rel_tol, &err);
    }
    if (error)
        *error = err;
    return value;
}

Chebyshev::Chebyshev(int order, double a, double b) : N_(order), a_(a), b_(b)
{
    if (order < 2 || !(b > a))
        throw ParameterError("Chebyshev grid needs order >= 2 and b > a");
    const int n = N_ + 1;
    Eigen::VectorXd xi(n);
    for (int j = 0; j < n; ++j)
        xi(j) = -std::cos(std::numbers::pi * j / N_);
    x_ = (a_ + (b_ - a_) * (xi.array() + 1.0) / 2.0).matrix();

    D_ = Eigen::MatrixXd::Zero(n, n);
    auto cw = [&](int j) { return (j == 0 || j == N_) ? 2.0 : 1.0; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            D_(i, j) = cw(i) / cw(j) * sgn / (xi(i) - xi(j));
        }
        D_(i, i) = -D_.row(i).sum();
    }
    D_ *= 2.0 / (b_ - a_);

    Eigen::MatrixXd V(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            V(j, k) = std::cos(k * std::acos(std::clamp(xi(j), -1.0, 1.0)));
    Vinv_ = V.inverse();

    // antiderivative in coefficient space, one degree higher
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + 1, n);
    K(1, 0) = 1.0;
    if (n > 1)
        K(2, 1) = 0.25;
    for (int k = 2; k < n; ++k) {
        K(k + 1, k) += 1.0 / (2.0 * (k + 1));
        K(k - 1, k) -= 1.0 / (2.0 * (k - 1));
    }
    Eigen::MatrixXd E(n, n + 1);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k <= n; ++k)
            E(j, k) = std::cos(k * std::acos(std::clamp(xi(j), -1.0, 1.0))) - ((k % 2 == 0) ? 1.0 : -1.0);
    Q_ = 0.5 * (b_ - a_) * E * K * Vinv_;
}

Eigen::VectorXd Chebyshev::coefficients(const Eigen::VectorXd& values) const
{
    return Vinv_ * values;
}

double Chebyshev::eval(const Eigen::VectorXd& values, double x, int k) const
{
    Eigen::VectorXd c = coefficients(values);
    for (int d = 0; d < k; ++d) {
        const auto n = c.size();
        Eigen::VectorXd cd = Eigen::VectorXd::Zero(n);
        for (Eigen::Index j = n - 1; j >= 1; --j)
            cd(j - 1) = (j + 1 < n ? cd(j + 1) : 0.0) + 2.0 * j * c(j);
        cd(0) *= 0.5;
        c = cd;
    }
    const double xi = (2.0 * x - a_ - b_) / (b_ - a_);
    double b1 = 0.0, b2 = 0.0;
    for (Eigen::Index j = c.size() - 1; j >= 1; --j) {
        const double t = 2.0 * xi * b1 - b2 + c(j);
        b2 = b1;
        b1 = t;
    }
    const double value = xi * b1 - b2 + c(0);
    return value * std::pow(2.0 / (b_ - a_), k);
}

Eigen::VectorXd Chebyshev::sample(const std::function<double(double)>& f) const
{
    Eigen::VectorXd v(x_.size());
    for (Eigen::Index j = 0; j < x_.size(); ++j)
        v(j) = f(x_(j));
    return v;
}

std::vector<double> linspace(double a, double b, std::size_t n)
{
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = (n == 1) ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    if (n > 1)
        out.back() = b;
    return out;
}

std::vector<double> logspace(double a, double b, std::size_t n)
{
    std::vector<double> out = linspace(std::log(a), std::log(b), n);
    for (auto& x : out)
        x = std::exp(x);
    if (n > 1) {
        out.front() = a;
        out.back() = b;
    }
    return out;
}

}  // namespace amte
