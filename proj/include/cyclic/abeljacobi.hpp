#pragma once

// Abel map from z0 = (base_x, sheet 0), Riemann constant by half-period
// search, and the theta arguments attached to coefficient vectors beta.

#include <cstdint>
#include <optional>

#include "cyclic/periods.hpp"
#include "cyclic/theta.hpp"

namespace cyclic {

struct JacobianPoint {
    Eigen::VectorXcd z;
    std::optional<Eigen::VectorXd> char_a;  // multiples of 1/(2N)
    std::optional<Eigen::VectorXd> char_b;
    double char_residual = 0.0;
};

/// Everything needed to integrate normalized differentials on one curve.
class Jacobian {
public:
    Jacobian(const Surface& surface, const HomologyBasis& basis, const PeriodData& periods,
             QuadratureOptions quad = {});

    const Surface& surface() const { return S_; }
    const PeriodData& periods() const { return P_; }
    int genus() const { return S_.genus(); }

    /// Path from z0 to the place; `route` selects among alternative detours (0 = default).
    SurfacePath path_to(const Place& place, int route = 0) const;
    /// Integral of the normalized differentials along a path.
    Eigen::VectorXcd integrate(const SurfacePath& path) const;
    Eigen::VectorXcd abel(const Place& place, int route = 0) const;

    /// Lattice coordinates (a, b) with z = tau a + b (real vectors).
    std::pair<Eigen::VectorXd, Eigen::VectorXd> coordinates(const Eigen::VectorXcd& z) const;
    /// Representative with coordinates in [-1/2, 1/2).
    Eigen::VectorXcd reduce(const Eigen::VectorXcd& z) const;
    /// Distance of z from the lattice Z^g + tau Z^g (max-norm of the reduced vector).
    double lattice_distance(const Eigen::VectorXcd& z) const;
    /// Rounds the coordinates of z to multiples of 1/(2N) and reports the residual.
    JacobianPoint with_characteristics(const Eigen::VectorXcd& z) const;

    /// Direction of the ray from the branch-point centroid that labels the places at infinity.
    cplx infinity_direction() const { return ray_dir_; }
    cplx centroid() const { return centroid_; }

private:
    SurfacePath regular_path(cplx x, int sheet, int route) const;
    std::vector<cplx> route_vertices(cplx from, cplx to, int route) const;

    const Surface& S_;
    const HomologyBasis& H_;
    PeriodData P_;
    QuadratureOptions quad_;
    Eigen::MatrixXcd Ainv_;
    cplx centroid_, ray_dir_;
    double sep_, scale_;
};

struct RiemannConstant {
    Eigen::VectorXcd K;
    Eigen::VectorXd half_a, half_b;  // half-period chosen (entries 0 or 1/2)
    double best_residual = 0.0;
    double second_residual = 0.0;
    double scale = 0.0;  // theta scale used for normalisation
};

/// Normalised modulus |theta(z)| exp(-pi y.Y^{-1}.y).
double theta_modulus(const Eigen::VectorXcd& z, const Eigen::MatrixXcd& tau, double tol = 1e-12);

/// Random regular places for divisor draws.
std::vector<Place> random_places(const Surface& surface, int count, std::uint64_t seed);

/// K = -u(div dx)/2 + h, with h the unique half period for which theta(u(D) + K)
/// vanishes on `draws` random effective divisors D of degree g-1.
RiemannConstant riemann_constant(const Jacobian& J, std::uint64_t seed = 1, int draws = 8);

/// e_beta = sum beta_i u(P_i) + K + (tau_0 - 1) sum_j u(infinity_j); for
/// admissible beta (tau_0 = 0) this is sum beta_i u(P_i) + K - sum_j u(infinity_j).
JacobianPoint divisor_point(const Jacobian& J, const RiemannConstant& K, const std::vector<int>& beta);

}  // namespace cyclic
