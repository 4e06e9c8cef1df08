#pragma once

// Period matrices of the non-normalized differential basis, the normalized
// period matrix tau and its derivatives in the branch points.

#include <functional>

#include <Eigen/Dense>

#include "cyclic/homology.hpp"

namespace cyclic {

struct QuadratureOptions {
    int order = 20;           // Gauss-Legendre nodes per piece
    double max_piece = 0.25;  // relative to branch_scale
};

struct PeriodData {
    Eigen::MatrixXcd A;    // A(h, c) = integral of basis differential c over a_h
    Eigen::MatrixXcd B;    // same over b_h
    Eigen::MatrixXcd tau;  // B A^{-1}
    cplx detC;
    int quad_order = 0;
};

/// Integrals over integer chains of generators: row r of the result is
/// sum_p rows[r][p] * integral over generator p of f(x) dx, f vector valued of length `width`.
Eigen::MatrixXcd chain_integrals(const Surface& surface, const HomologyBasis& basis, const IntMatrix& rows,
                                 const std::function<Eigen::VectorXcd(const SurfacePoint&)>& f, int width,
                                 const QuadratureOptions& q = {}, const std::vector<cplx>& avoid = {});

PeriodData compute_periods(const Surface& surface, const HomologyBasis& basis, const QuadratureOptions& q = {});

/// Largest relative change of A and B entries between quadrature orders q and 2q.
double quadrature_drift(const Surface& surface, const HomologyBasis& basis, const QuadratureOptions& q = {});

/// Expansion coefficients at P_i of the normalized differentials
/// v_r = sum_c w_c (A^{-1})_{cr}: result(alpha, r) is the coefficient of t^alpha dt.
Eigen::MatrixXcd normalized_expansion(const Surface& surface, const PeriodData& periods, int i, int n_terms);

/// Variational formula: d tau_jk / d lambda_i = (2 pi i / N) sum_{alpha + beta = N-2} v_j^alpha v_k^beta.
Eigen::MatrixXcd dtau_dlambda(const Surface& surface, const PeriodData& periods, int i);

/// Surface with lambda_i moved by delta (same exponents and base point).
Surface moved(const Surface& surface, int i, cplx delta);

/// Central differences of tau under lambda_i -> lambda_i +- h, Richardson-extrapolated from h and h/2.
Eigen::MatrixXcd dtau_dlambda_numeric(const Surface& surface, const HomologyBasis& basis, int i, double h,
                                      const QuadratureOptions& q = {});

/// a-period integrals of the lambda_i-derivatives of the basis differentials.
Eigen::MatrixXcd dA_dlambda(const Surface& surface, const HomologyBasis& basis, int i, const QuadratureOptions& q = {});

/// d log det A / d lambda_i through Jacobi's formula tr(A^{-1} dA).
cplx dlog_detC_jacobi(const Surface& surface, const HomologyBasis& basis, const PeriodData& periods, int i,
                      const QuadratureOptions& q = {});

/// Same quantity from central differences of log det A, Richardson-extrapolated.
cplx dlog_detC_numeric(const Surface& surface, const HomologyBasis& basis, int i, double h,
                       const QuadratureOptions& q = {});

}  // namespace cyclic
