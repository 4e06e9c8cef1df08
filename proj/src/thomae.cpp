#include "cyclic/thomae.hpp"

#include <cmath>
#include <numbers>

namespace cyclic {

namespace {

constexpr double kPi = std::numbers::pi;

Rational shift(const CurveSpec& spec) {
    const std::int64_t n1 = spec.N - 1;
    return Rational(n1 * n1, 4 * static_cast<std::int64_t>(spec.N));
}

double to_double(const Rational& q) { return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator()); }

CurveSpec with_lambda(const CurveSpec& spec, const std::vector<cplx>& lambda) {
    CurveSpec out = spec;
    out.lambda = lambda;
    return out;
}

// Nearest branch of log(z) to `previous`.
double unwrap(double arg, double previous) {
    return arg + 2.0 * kPi * std::round((previous - arg) / (2.0 * kPi));
}

}  // namespace

CurveAnalysis::CurveAnalysis(const CurveSpec& spec, const AnalysisOptions& opt, const HomologyBasis* transported)
    : surface(spec), options(opt) {
    if (transported) {
        basis = *transported;
        check_transport(surface, basis);
    } else {
        basis = build_basis(surface, opt.seed);
    }
    periods = compute_periods(surface, basis, opt.quad);
    jacobian = std::make_unique<Jacobian>(surface, basis, periods, opt.quad);
    riemann = riemann_constant(*jacobian, opt.seed);
    theta_scale = riemann.scale;
}

Characteristic characteristic_of(const CurveAnalysis& ca, const std::vector<int>& beta) {
    const JacobianPoint e = divisor_point(*ca.jacobian, ca.riemann, beta);
    return {*e.char_a, *e.char_b};
}

ThetaValue theta_constant(const Characteristic& ch, const Eigen::MatrixXcd& tau, double tol, int derivatives) {
    return theta_char(ch.a, ch.b, Eigen::VectorXcd::Zero(tau.rows()), tau, tol, derivatives);
}

Rational thomae_exponent(const CurveSpec& spec, const std::vector<int>& beta, int i, int j, ExponentForm form) {
    if (i == j) throw InvalidInput("thomae_exponent: i == j");
    const Rational base = q_exponent(spec, beta, i, j) + gamma_exponent(spec, i, j) / 2;
    if (form == ExponentForm::Stated) return base;
    return (base - shift(spec)) / 2;
}

cplx log_branch_product(const CurveSpec& spec, const std::vector<int>& beta, ExponentForm form) {
    cplx sum = 0.0;
    for (int i = 0; i < spec.m(); ++i)
        for (int j = 0; j < spec.m(); ++j) {
            if (i == j) continue;
            const cplx d = spec.lambda[i] - spec.lambda[j];
            if (std::abs(d) == 0.0) throw InvalidInput("coincident branch points");
            sum += to_double(thomae_exponent(spec, beta, i, j, form)) * std::log(d);
        }
    return sum;
}

cplx rhs_value(const CurveAnalysis& ca, const std::vector<int>& beta, ExponentForm form) {
    return std::sqrt(ca.periods.detC) * std::exp(log_branch_product(ca.surface.spec(), beta, form));
}

NonvanishingResult verify_nonvanishing(const CurveAnalysis& ca, const std::vector<int>& beta) {
    NonvanishingResult out;
    out.order = tau_profile(ca.surface.spec(), beta).order;
    const Characteristic ch = characteristic_of(ca, beta);
    out.theta_abs = std::abs(theta_constant(ch, ca.periods.tau, ca.options.theta_tol).value);
    out.scale = ca.theta_scale;
    out.ratio = out.theta_abs / out.scale;
    out.pass = out.order == 0 ? out.ratio > 1e-6 : out.ratio < 1e-6;
    return out;
}

double verify_first_derivatives(const CurveAnalysis& ca, const std::vector<int>& beta) {
    const Characteristic ch = characteristic_of(ca, beta);
    const ThetaValue t = theta_constant(ch, ca.periods.tau, ca.options.theta_tol, 1);
    if (std::abs(t.value) < 1e-6 * ca.theta_scale) throw NumericalError("theta constant vanishes");
    return t.grad.cwiseAbs().maxCoeff() / std::abs(t.value);
}

DerivativeIdentity verify_derivative_identity(const CurveAnalysis& ca, const std::vector<int>& beta, int i,
                                              double step) {
    const Surface& S = ca.surface;
    const CurveSpec& spec = S.spec();
    const Characteristic ch = characteristic_of(ca, beta);
    const double tol = ca.options.theta_tol;

    const ThetaValue t0 = theta_constant(ch, ca.periods.tau, tol, 2);
    if (std::abs(t0.value) < 1e-6 * ca.theta_scale) throw NumericalError("theta constant too small for stable logs");

    auto log_ratio = [&](cplx delta) {
        const Surface Sm = moved(S, i, delta);
        check_transport(Sm, ca.basis);
        const PeriodData Pm = compute_periods(Sm, ca.basis, ca.options.quad);
        return std::log(theta_constant(ch, Pm.tau, tol).value / t0.value);
    };
    const double h = step * branch_scale(spec);
    auto central = [&](double hh) { return (log_ratio(hh) - log_ratio(-hh)) / (2.0 * hh); };
    const cplx d1 = central(h), d2 = central(h / 2);

    DerivativeIdentity out;
    out.i = i;
    out.lhs_numeric = (4.0 * d2 - d1) / 3.0;

    const Eigen::MatrixXcd dtau = dtau_dlambda(S, ca.periods, i);
    out.lhs_heat = t0.hess.cwiseProduct(dtau).sum() / (4.0 * kPi * cplx(0, 1) * t0.value);

    const cplx dlog = dlog_detC_jacobi(S, ca.basis, ca.periods, i, ca.options.quad);
    cplx sq = 0.0, sg = 0.0, s1 = 0.0;
    for (int j = 0; j < spec.m(); ++j) {
        if (j == i) continue;
        const cplx inv = 1.0 / (spec.lambda[i] - spec.lambda[j]);
        sq += to_double(q_exponent(spec, beta, i, j)) * inv;
        sg += to_double(gamma_exponent(spec, i, j)) * inv;
        s1 += inv;
    }
    out.rhs_stated = 0.5 * dlog + sq + 0.5 * sg;
    out.rhs_corrected = out.rhs_stated - to_double(shift(spec)) * s1;
    const double norm = std::abs(out.lhs_numeric);
    out.residual_stated = std::abs(out.lhs_numeric - out.rhs_stated) / norm;
    out.residual_corrected = std::abs(out.lhs_numeric - out.rhs_corrected) / norm;
    out.residual_heat = std::abs(out.lhs_heat - out.lhs_numeric) / norm;
    return out;
}

ConstancyResult verify_constancy(const CurveAnalysis& ca, const std::vector<int>& beta,
                                 const std::vector<std::vector<cplx>>& chain) {
    if (chain.empty()) throw InvalidInput("deformation chain is empty");
    const CurveSpec& spec0 = ca.surface.spec();
    const int m = spec0.m();
    for (const auto& l : chain)
        if (static_cast<int>(l.size()) != m) throw InvalidInput("deformation: lambda has the wrong length");
    for (int k = 0; k < m; ++k)
        if (std::abs(chain.front()[k] - spec0.lambda[k]) > 1e-12 * branch_scale(spec0))
            throw InvalidInput("deformation must start at the analysed configuration");

    const Characteristic ch = characteristic_of(ca, beta);
    const double tol = ca.options.theta_tol;

    Eigen::MatrixXd args(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j) args(i, j) = std::arg(spec0.lambda[i] - spec0.lambda[j]);
    cplx root = std::sqrt(ca.periods.detC);

    ConstancyResult out;
    for (std::size_t t = 0; t < chain.size(); ++t) {
        const CurveSpec spec = with_lambda(spec0, chain[t]);
        if (t > 0) {
            const double sep = min_branch_separation(spec);
            double moved_by = 0.0;
            for (int k = 0; k < m; ++k) moved_by = std::max(moved_by, std::abs(chain[t][k] - chain[t - 1][k]));
            if (moved_by > 0.5 * sep) throw InvalidInput("deformation step too large");
        }
        const CurveAnalysis step(spec, ca.options, &ca.basis);
        const Characteristic cht = characteristic_of(step, beta);
        if ((cht.a - ch.a).cwiseAbs().maxCoeff() > 1e-9 || (cht.b - ch.b).cwiseAbs().maxCoeff() > 1e-9)
            out.characteristics_stable = false;

        const cplx r = std::sqrt(step.periods.detC);
        root = std::abs(r - root) <= std::abs(r + root) ? r : -r;

        cplx log_stated = 0.0, log_corr = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                const cplx d = spec.lambda[i] - spec.lambda[j];
                args(i, j) = unwrap(std::arg(d), args(i, j));
                const cplx L(std::log(std::abs(d)), args(i, j));
                log_stated += to_double(thomae_exponent(spec, beta, i, j, ExponentForm::Stated)) * L;
                log_corr += to_double(thomae_exponent(spec, beta, i, j, ExponentForm::Corrected)) * L;
            }
        const cplx th = theta_constant(ch, step.periods.tau, tol).value;
        out.alpha_stated.push_back(th / (root * std::exp(log_stated)));
        out.alpha_corrected.push_back(th / (root * std::exp(log_corr)));
    }
    for (std::size_t t = 0; t < chain.size(); ++t) {
        out.drift_stated = std::max(out.drift_stated, std::abs(out.alpha_stated[t] / out.alpha_stated[0] - 1.0));
        out.drift_corrected = std::max(out.drift_corrected, std::abs(out.alpha_corrected[t] / out.alpha_corrected[0] - 1.0));
    }
    return out;
}

std::vector<std::vector<cplx>> linear_deformation(const CurveSpec& spec, int i, cplx target, int steps) {
    if (steps < 1) throw InvalidInput("deformation: steps must be at least 1");
    if (i < 0 || i >= spec.m()) throw InvalidInput("deformation: branch index out of range");
    std::vector<std::vector<cplx>> out;
    for (int k = 0; k <= steps; ++k) {
        auto l = spec.lambda;
        l[i] = spec.lambda[i] + (target - spec.lambda[i]) * (static_cast<double>(k) / steps);
        out.push_back(l);
    }
    return out;
}

}  // namespace cyclic
