#include "cyclic/theta.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <boost/math/special_functions/gamma.hpp>

namespace cyclic {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

struct Ellipsoid {
    Eigen::MatrixXd T;       // upper Cholesky factor of pi * Im tau
    Eigen::VectorXd center;  // minimiser of the term modulus
    double radius;
};

// Tail bound of the normalised sum outside radius R, with rho a lower bound
// on the shortest vector of the lattice T Z^g.
double tail_bound(int g, double R, double rho) {
    const double s = R - 0.5 * rho;
    if (s <= 0) return std::numeric_limits<double>::infinity();
    const double a = 0.5 * g;
    return 0.5 * g * std::pow(2.0 / rho, g) * boost::math::tgamma(a, s * s);
}

Ellipsoid ellipsoid(const Eigen::MatrixXcd& tau, const Eigen::VectorXd& shift, const Eigen::VectorXcd& w, double tol) {
    const int g = static_cast<int>(tau.rows());
    const Eigen::MatrixXd Y = tau.imag();
    Eigen::LLT<Eigen::MatrixXd> llt(kPi * Y);
    if (llt.info() != Eigen::Success) throw InvalidInput("Im tau is not positive definite");
    Ellipsoid E;
    E.T = llt.matrixU();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Y);
    const double lmin = es.eigenvalues().minCoeff();
    if (!(lmin > 0)) throw InvalidInput("Im tau is not positive definite");
    const double rho = std::sqrt(kPi * lmin);
    // terms are indexed by m = n + shift; modulus exp(-(m - c).pi Y.(m - c)) up to a constant
    E.center = -Y.ldlt().solve(w.imag());
    double R = 0.5 * rho + 1.0;
    while (tail_bound(g, R, rho) > tol) {
        R *= 1.1;
        if (R > 60.0) throw NumericalError("theta truncation radius cap reached");
    }
    E.radius = R;
    (void)shift;
    return E;
}

// Visits every m = n + shift (n integral) with |T (m - c)| <= R.
void enumerate(const Ellipsoid& E, const Eigen::VectorXd& shift, const std::function<void(const Eigen::VectorXd&)>& visit) {
    const int g = static_cast<int>(E.T.rows());
    Eigen::VectorXd m(g);
    std::function<void(int, double)> rec = [&](int k, double budget) {
        if (k < 0) {
            visit(m);
            return;
        }
        // contribution of coordinate k given the already chosen k+1..g-1
        double partial = 0.0;
        for (int j = k + 1; j < g; ++j) partial += E.T(k, j) * (m[j] - E.center[j]);
        const double tkk = E.T(k, k);
        const double span = std::sqrt(std::max(0.0, budget)) / tkk;
        const double mid = E.center[k] - partial / tkk;
        const double lo = std::ceil(mid - span - shift[k]), hi = std::floor(mid + span - shift[k]);
        for (double n = lo; n <= hi; n += 1.0) {
            m[k] = n + shift[k];
            const double v = tkk * (m[k] - E.center[k]) + partial;
            rec(k - 1, budget - v * v);
        }
    };
    rec(g - 1, E.radius * E.radius);
}

ThetaValue lattice_sum(const Eigen::VectorXd& shift, const Eigen::VectorXcd& w, const Eigen::MatrixXcd& tau, double tol,
                       int derivatives) {
    const int g = static_cast<int>(tau.rows());
    if (tau.cols() != g || w.size() != g || shift.size() != g) throw InvalidInput("theta dimension mismatch");
    const double eff = derivatives == 0 ? tol : (derivatives == 1 ? 1e-3 * tol : 1e-5 * tol);
    const Ellipsoid E = ellipsoid(tau, shift, w, eff);
    ThetaValue out;
    out.value = 0.0;
    if (derivatives >= 1) out.grad = Eigen::VectorXcd::Zero(g);
    if (derivatives >= 2) out.hess = Eigen::MatrixXcd::Zero(g, g);
    enumerate(E, shift, [&](const Eigen::VectorXd& m) {
        const Eigen::VectorXcd mc = m.cast<cplx>();
        const cplx e = std::exp(kI * kPi * mc.dot(tau * mc) + 2.0 * kI * kPi * mc.dot(w));
        out.value += e;
        if (derivatives >= 1) out.grad += (2.0 * kI * kPi * e) * mc;
        if (derivatives >= 2) out.hess += (-4.0 * kPi * kPi * e) * (mc * mc.transpose());
    });
    return out;
}

}  // namespace

ThetaValue theta(const Eigen::VectorXcd& z, const Eigen::MatrixXcd& tau, double tol, int derivatives) {
    return lattice_sum(Eigen::VectorXd::Zero(z.size()), z, tau, tol, derivatives);
}

ThetaValue theta_char(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXcd& z,
                      const Eigen::MatrixXcd& tau, double tol, int derivatives) {
    // sum over m = n + a of exp(pi i m.tau.m + 2 pi i m.(z + b))
    return lattice_sum(a, z + b.cast<cplx>(), tau, tol, derivatives);
}

double theta_scale(const Eigen::MatrixXcd& tau, std::uint64_t seed, int samples, double tol) {
    const int g = static_cast<int>(tau.rows());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const Eigen::MatrixXd Y = tau.imag();
    double best = 0.0;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd x(g), ycoef(g);
        for (int k = 0; k < g; ++k) {
            x[k] = U(rng);
            ycoef[k] = U(rng) - 0.5;
        }
        // z = x + tau-imaginary part within one fundamental cell
        const Eigen::VectorXd y = Y * ycoef;
        Eigen::VectorXcd z(g);
        for (int k = 0; k < g; ++k) z[k] = cplx(x[k], y[k]);
        const double norm = std::exp(-kPi * y.dot(Y.ldlt().solve(y)));
        best = std::max(best, std::abs(theta(z, tau, tol).value) * norm);
    }
    return best;
}

std::size_t theta_points(const Eigen::MatrixXcd& tau, const Eigen::VectorXcd& z, double tol) {
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(z.size());
    const Ellipsoid E = ellipsoid(tau, zero, z, tol);
    std::size_t count = 0;
    enumerate(E, zero, [&](const Eigen::VectorXd&) { ++count; });
    return count;
}

}  // namespace cyclic
