#pragma once

// Algebraic Szego kernel, the canonical symmetric bidifferential built from
// the xi polynomials, and the projective-connection coefficients at branch points.

#include <vector>

#include "cyclic/periods.hpp"

namespace cyclic {

/// Exponent (reduce(beta_i + k R_i) - (N-1)/2)/N of (x_1 - lambda_i) in the k-th
/// spinor term; Q carries the opposite exponent.
double spinor_exponent(const CurveSpec& spec, const std::vector<int>& beta, int i, int k);

/// Coefficient of sqrt(dx_1) sqrt(dx_2) of F_beta(P, Q), P = (x_1, .), Q = (x_2, .).
cplx szego_eval(const Surface& surface, const std::vector<int>& beta, const SurfacePoint& P, const SurfacePoint& Q);

/// Coefficients c_0, c_1, ... with F_beta(P, Q) (x_2 - x_1) = sum c_n (x_1 - x_2)^n for P near Q on
/// the same sheet (exact power-series arithmetic in the exponents).
std::vector<cplx> szego_expansion(const Surface& surface, const std::vector<int>& beta, cplx x2, int order);

/// (1/2N) sum_{i,j} q(beta_i, beta_j) / ((x_2 - lambda_i)(x_2 - lambda_j)).
cplx szego_quadratic_q_formula(const Surface& surface, const std::vector<int>& beta, cplx x2);

/// (1/2N) sum_{i,j} (q(beta_i, beta_j) - (N-1)^2/(4N)) / ((x_2 - lambda_i)(x_2 - lambda_j)).
cplx szego_quadratic_exact(const Surface& surface, const std::vector<int>& beta, cplx x2);

/// omega(x, y) = xi(x, y) - w(x)^T A^{-1} Xi(y) with xi = (1/N) sum_l xi_l and
/// Xi_h(y) the a-periods of xi(., y). All values are coefficients of dz(x) dz(y).
class CanonicalBidifferential {
public:
    CanonicalBidifferential(const Surface& surface, const HomologyBasis& basis, const PeriodData& periods,
                            QuadratureOptions quad = {});

    cplx xi(const SurfacePoint& x, const SurfacePoint& y) const;
    /// a-period integrals of xi(., y) (y must keep clearance from the cycles).
    Eigen::VectorXcd xi_periods(const SurfacePoint& y, const QuadratureOptions& q) const;
    Eigen::VectorXcd xi_periods(const SurfacePoint& y) const { return xi_periods(y, quad_); }
    /// Coefficients c = A^{-1} Xi(y) of the holomorphic correction.
    Eigen::VectorXcd correction(const SurfacePoint& y) const;

    cplx omega(const SurfacePoint& x, const SurfacePoint& y) const;
    cplx omega(const SurfacePoint& x, const SurfacePoint& y, const Eigen::VectorXcd& corr) const;

    /// Largest |integral over a_h of omega(., y)| using a doubled quadrature order for the check.
    double a_period_residual(const SurfacePoint& y) const;

    /// G_z(y): regular part of omega on the diagonal, coefficient of dz(y)^2.
    cplx projective_connection(const SurfacePoint& y) const;

    /// Coefficient of t^{N-2} dt^2 of G_z at P_i, t = (z - lambda_i)^{1/N}, from a discrete
    /// Fourier fit over `samples` points on |t|^N = radius * (min branch separation).
    cplx gz_coefficient(int i, int samples = 32, double radius = 0.03) const;

    const Surface& surface() const { return S_; }

private:
    const Surface& S_;
    const HomologyBasis& H_;
    PeriodData P_;
    QuadratureOptions quad_;
    Eigen::MatrixXcd Ainv_;
};

/// Right-hand side -N sum_{j != i} gamma_ij/(lambda_i - lambda_j) - N dlog det C / dlambda_i.
cplx gz_expected(const Surface& surface, int i, cplx dlog_detC);

struct CramerCheck {
    cplx detB, detC;
    std::vector<cplx> detB_l;   // indexed by l = 1..N-1 (entry 0 unused)
    std::vector<cplx> sumC_l;   // sum_j det C_j^{(l)}
    cplx jacobi;                // det C tr(C^{-1} dC)
};

/// Column identities for the a-period matrices with (z - lambda_i)^{j-1} numerators.
CramerCheck cramer_decomposition_check(const Surface& surface, const HomologyBasis& basis, const PeriodData& periods,
                                       int i, const QuadratureOptions& q = {});

}  // namespace cyclic
