#include "cyclic/periods.hpp"

#include <cmath>
#include <numbers>

namespace cyclic {

Eigen::MatrixXcd chain_integrals(const Surface& S, const HomologyBasis& H, const IntMatrix& rows,
                                 const std::function<Eigen::VectorXcd(const SurfacePoint&)>& f, int width,
                                 const QuadratureOptions& q, const std::vector<cplx>& avoid) {
    const std::size_t n = H.generators.size();
    const double max_piece = q.max_piece * branch_scale(S.spec());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()), width);
    for (std::size_t p = 0; p < n; ++p) {
        bool used = false;
        for (const auto& r : rows) used = used || r[p] != 0;
        if (!used) continue;
        const auto nodes = S.discretize(generator_path(S, H.generators[p], H.polygon_vertices), q.order, max_piece, avoid);
        Eigen::VectorXcd I = Eigen::VectorXcd::Zero(width);
        for (std::size_t k = 0; k < nodes.points.size(); ++k) I += f(nodes.points[k]) * nodes.weights[k];
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r][p] != 0) out.row(static_cast<Eigen::Index>(r)) += static_cast<double>(rows[r][p]) * I.transpose();
    }
    return out;
}

PeriodData compute_periods(const Surface& S, const HomologyBasis& H, const QuadratureOptions& q) {
    const int g = S.genus();
    IntMatrix rows = H.a;
    rows.insert(rows.end(), H.b.begin(), H.b.end());
    const auto all = chain_integrals(S, H, rows, [&](const SurfacePoint& p) { return S.differentials(p); }, g, q);
    PeriodData P;
    P.A = all.topRows(g);
    P.B = all.bottomRows(g);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(P.A);
    P.detC = lu.determinant();
    if (std::abs(P.detC) == 0.0 || !std::isfinite(std::abs(P.detC))) throw NumericalError("singular a-period matrix");
    P.tau = P.B * lu.inverse();
    P.quad_order = q.order;
    return P;
}

double quadrature_drift(const Surface& S, const HomologyBasis& H, const QuadratureOptions& q) {
    QuadratureOptions q2 = q;
    q2.order = 2 * q.order;
    const auto lo = compute_periods(S, H, q), hi = compute_periods(S, H, q2);
    const double scale = std::max(hi.A.cwiseAbs().maxCoeff(), hi.B.cwiseAbs().maxCoeff());
    return std::max((lo.A - hi.A).cwiseAbs().maxCoeff(), (lo.B - hi.B).cwiseAbs().maxCoeff()) / scale;
}

Eigen::MatrixXcd normalized_expansion(const Surface& S, const PeriodData& P, int i, int n_terms) {
    const int g = S.genus();
    // any point near lambda_i fixes the t-branch; the formulas using these
    // coefficients are invariant under t -> omega t
    const cplx lam = S.spec().lambda[i];
    const auto ref = S.point(lam + 0.01 * min_branch_separation(S.spec()), 0);
    Eigen::MatrixXcd W(n_terms, g);
    for (int c = 0; c < g; ++c) {
        const auto coef = S.local_expansion(c, i, n_terms, ref);
        for (int a = 0; a < n_terms; ++a) W(a, c) = coef[a];
    }
    return W * P.A.inverse();
}

Eigen::MatrixXcd dtau_dlambda(const Surface& S, const PeriodData& P, int i) {
    const int N = S.N();
    const auto V = normalized_expansion(S, P, i, N - 1);
    const int g = S.genus();
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(g, g);
    for (int a = 0; a <= N - 2; ++a) D += V.row(a).transpose() * V.row(N - 2 - a);
    return D * cplx(0.0, 2.0 * std::numbers::pi / N);
}

Surface moved(const Surface& S, int i, cplx delta) {
    CurveSpec spec = S.spec();
    spec.lambda[i] += delta;
    return Surface(spec);
}

Eigen::MatrixXcd dtau_dlambda_numeric(const Surface& S, const HomologyBasis& H, int i, double h,
                                      const QuadratureOptions& q) {
    auto central = [&](double step) {
        const Surface plus = moved(S, i, step), minus = moved(S, i, -step);
        check_transport(plus, H);
        check_transport(minus, H);
        return Eigen::MatrixXcd((compute_periods(plus, H, q).tau - compute_periods(minus, H, q).tau) / (2.0 * step));
    };
    const Eigen::MatrixXcd d1 = central(h), d2 = central(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

Eigen::MatrixXcd dA_dlambda(const Surface& S, const HomologyBasis& H, int i, const QuadratureOptions& q) {
    const int g = S.genus();
    const cplx lam = S.spec().lambda[i];
    return chain_integrals(S, H, H.a, [&](const SurfacePoint& p) {
        Eigen::VectorXcd w = S.differentials(p);
        for (int c = 0; c < g; ++c) w[c] *= S.s_exponent(S.basis()[c].l, i) / (p.x - lam);
        return w;
    }, g, q);
}

cplx dlog_detC_jacobi(const Surface& S, const HomologyBasis& H, const PeriodData& P, int i,
                      const QuadratureOptions& q) {
    return (P.A.inverse() * dA_dlambda(S, H, i, q)).trace();
}

cplx dlog_detC_numeric(const Surface& S, const HomologyBasis& H, int i, double h, const QuadratureOptions& q) {
    const cplx base = compute_periods(S, H, q).detC;
    auto central = [&](double step) {
        const Surface plus = moved(S, i, step), minus = moved(S, i, -step);
        check_transport(plus, H);
        check_transport(minus, H);
        const cplx lp = std::log(compute_periods(plus, H, q).detC / base);
        const cplx lm = std::log(compute_periods(minus, H, q).detC / base);
        return (lp - lm) / (2.0 * step);
    };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

}  // namespace cyclic
