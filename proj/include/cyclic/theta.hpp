#pragma once

// Riemann theta function with characteristics, truncated over the ellipsoid
// given by the Cholesky factor of Im tau.

#include <cstdint>

#include <Eigen/Dense>

#include "cyclic/curve.hpp"

namespace cyclic {

struct ThetaValue {
    cplx value;
    Eigen::VectorXcd grad;  // filled when derivatives >= 1
    Eigen::MatrixXcd hess;  // filled when derivatives >= 2
};

/// theta(z, tau) = sum_n exp(pi i n.tau.n + 2 pi i n.z). The truncation error is
/// below tol * exp(pi y.Y^{-1}.y) with y = Im z, Y = Im tau.
ThetaValue theta(const Eigen::VectorXcd& z, const Eigen::MatrixXcd& tau, double tol = 1e-10, int derivatives = 0);

/// theta[a, b](z) = exp(pi i a.tau.a + 2 pi i a.(z + b)) theta(z + tau a + b); derivatives in z.
ThetaValue theta_char(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXcd& z,
                      const Eigen::MatrixXcd& tau, double tol = 1e-10, int derivatives = 0);

/// Largest modulus-normalised value |theta(z)| exp(-pi y.Y^{-1}.y) over `samples`
/// random arguments; the comparison scale for vanishing tests.
double theta_scale(const Eigen::MatrixXcd& tau, std::uint64_t seed = 1, int samples = 20, double tol = 1e-10);

/// Number of lattice points used for the last-requested truncation (diagnostic).
std::size_t theta_points(const Eigen::MatrixXcd& tau, const Eigen::VectorXcd& z, double tol);

}  // namespace cyclic
