#pragma once

// Thomae-type identities for cyclic covers: non-vanishing of theta constants at
// the divisor points e_beta, the logarithmic derivative identity in the branch
// points and constancy of the quotient theta[e_beta](0) / rhs along deformations.

#include <memory>
#include <optional>
#include <vector>

#include "cyclic/abeljacobi.hpp"
#include "cyclic/divisors.hpp"
#include "cyclic/kernels.hpp"

namespace cyclic {

struct AnalysisOptions {
    QuadratureOptions quad;
    double theta_tol = 1e-12;
    std::uint64_t seed = 1;
};

/// Surface, homology, periods, Abel map and Riemann constant of one curve.
/// Members refer to each other, so instances are neither copied nor moved.
struct CurveAnalysis {
    Surface surface;
    HomologyBasis basis;
    PeriodData periods;
    std::unique_ptr<Jacobian> jacobian;
    RiemannConstant riemann;
    double theta_scale = 0.0;
    AnalysisOptions options;

    CurveAnalysis(const CurveSpec& spec, const AnalysisOptions& opt, const HomologyBasis* transported = nullptr);
    CurveAnalysis(const CurveAnalysis&) = delete;
    CurveAnalysis& operator=(const CurveAnalysis&) = delete;
};

struct Characteristic {
    Eigen::VectorXd a, b;
};

Characteristic characteristic_of(const CurveAnalysis& ca, const std::vector<int>& beta);

/// theta[a, b](0, tau) with derivatives.
ThetaValue theta_constant(const Characteristic& ch, const Eigen::MatrixXcd& tau, double tol, int derivatives = 0);

/// Exponents attached to ordered pairs (i, j), i != j, of the product over (lambda_i - lambda_j).
enum class ExponentForm {
    Stated,     // q_ij + gamma_ij/2 over ordered pairs
    Corrected,  // (q_ij + gamma_ij/2 - (N-1)^2/(4N)) / 2 over ordered pairs, i.e. the full value over unordered pairs
};

Rational thomae_exponent(const CurveSpec& spec, const std::vector<int>& beta, int i, int j, ExponentForm form);

/// log of prod_{i != j} (lambda_i - lambda_j)^{E_ij} with principal logarithms.
cplx log_branch_product(const CurveSpec& spec, const std::vector<int>& beta, ExponentForm form);

/// sqrt(det C) * prod_{i != j} (lambda_i - lambda_j)^{E_ij}, principal branches.
cplx rhs_value(const CurveAnalysis& ca, const std::vector<int>& beta, ExponentForm form = ExponentForm::Stated);

struct NonvanishingResult {
    double theta_abs = 0.0;
    double scale = 0.0;
    double ratio = 0.0;
    int order = 0;
    bool pass = false;  // order 0 -> ratio > 1e-6, order > 0 -> ratio < 1e-6
};
NonvanishingResult verify_nonvanishing(const CurveAnalysis& ca, const std::vector<int>& beta);

/// max_i |d theta[e] / dz_i (0)| / |theta[e](0)|.
double verify_first_derivatives(const CurveAnalysis& ca, const std::vector<int>& beta);

struct DerivativeIdentity {
    int i = 0;
    cplx lhs_numeric;      // differences of log theta[a, b](0, tau(lambda)) at fixed characteristics
    cplx lhs_heat;         // heat equation with the variational formula
    cplx rhs_stated;       // 1/2 dlog det C + sum q/(l_i - l_j) + 1/2 sum gamma/(l_i - l_j)
    cplx rhs_corrected;    // rhs_stated - (N-1)^2/(4N) sum_{j != i} 1/(l_i - l_j)
    double residual_stated = 0.0;
    double residual_corrected = 0.0;
    double residual_heat = 0.0;  // |lhs_heat - lhs_numeric| / |lhs_numeric|
};
DerivativeIdentity verify_derivative_identity(const CurveAnalysis& ca, const std::vector<int>& beta, int i,
                                              double step = 1e-3);

struct ConstancyResult {
    std::vector<cplx> alpha_stated;     // theta[e](0) / rhs (stated exponents)
    std::vector<cplx> alpha_corrected;  // theta[e](0) / rhs (corrected exponents)
    double drift_stated = 0.0;
    double drift_corrected = 0.0;
    bool characteristics_stable = true;
};

/// Follows the chain of configurations (the first must equal the analysed curve),
/// transporting the homology basis and tracking all branches continuously.
ConstancyResult verify_constancy(const CurveAnalysis& ca, const std::vector<int>& beta,
                                 const std::vector<std::vector<cplx>>& chain);

/// Evenly spaced chain moving lambda_i from its current value to `target` in `steps` steps.
std::vector<std::vector<cplx>> linear_deformation(const CurveSpec& spec, int i, cplx target, int steps);

}  // namespace cyclic
