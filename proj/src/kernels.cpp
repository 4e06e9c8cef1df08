#include "cyclic/kernels.hpp"

#include <cmath>
#include <numbers>

namespace cyclic {

namespace {
constexpr double kPi = std::numbers::pi;

// exp of a power series with zero constant term
std::vector<cplx> series_exp(const std::vector<cplx>& L) {
    std::vector<cplx> E(L.size(), 0.0);
    E[0] = 1.0;
    for (std::size_t n = 1; n < L.size(); ++n) {
        cplx s = 0.0;
        for (std::size_t j = 1; j <= n; ++j) s += static_cast<double>(j) * L[j] * E[n - j];
        E[n] = s / static_cast<double>(n);
    }
    return E;
}
}  // namespace

double spinor_exponent(const CurveSpec& spec, const std::vector<int>& beta, int i, int k) {
    const int N = spec.N;
    return (reduce(beta[i] + static_cast<std::int64_t>(k) * spec.R[i], N) - 0.5 * (N - 1)) / N;
}

cplx szego_eval(const Surface& S, const std::vector<int>& beta, const SurfacePoint& P, const SurfacePoint& Q) {
    const int N = S.N();
    if (P.x == Q.x) throw InvalidInput("Szego kernel evaluated on a common fibre");
    cplx sum = 0.0;
    for (int k = 0; k < N; ++k) {
        cplx e = 0.0;
        for (int i = 0; i < S.m(); ++i) e += spinor_exponent(S.spec(), beta, i, k) * (P.logs[i] - Q.logs[i]);
        sum += std::exp(e);
    }
    return sum / (static_cast<double>(N) * (Q.x - P.x));
}

std::vector<cplx> szego_expansion(const Surface& S, const std::vector<int>& beta, cplx x2, int order) {
    const int N = S.N(), m = S.m();
    std::vector<cplx> a(m);
    for (int i = 0; i < m; ++i) a[i] = 1.0 / (x2 - S.spec().lambda[i]);
    std::vector<cplx> avg(order + 1, 0.0);
    for (int k = 0; k < N; ++k) {
        // sum_i e_ik log(1 + d a_i) = sum_n (-1)^{n+1}/n (sum_i e_ik a_i^n) d^n
        std::vector<cplx> L(order + 1, 0.0);
        for (int i = 0; i < m; ++i) {
            const double e = spinor_exponent(S.spec(), beta, i, k);
            cplx pw = a[i];
            for (int n = 1; n <= order; ++n) {
                L[n] += ((n % 2) ? 1.0 : -1.0) * e * pw / static_cast<double>(n);
                pw *= a[i];
            }
        }
        const auto E = series_exp(L);
        for (int n = 0; n <= order; ++n) avg[n] += E[n] / static_cast<double>(N);
    }
    return avg;
}

cplx szego_quadratic_q_formula(const Surface& S, const std::vector<int>& beta, cplx x2) {
    cplx s = 0.0;
    for (int i = 0; i < S.m(); ++i)
        for (int j = 0; j < S.m(); ++j)
            s += boost::rational_cast<double>(q_exponent(S.spec(), beta, i, j)) /
                 ((x2 - S.spec().lambda[i]) * (x2 - S.spec().lambda[j]));
    return s / (2.0 * S.N());
}

cplx szego_quadratic_exact(const Surface& S, const std::vector<int>& beta, cplx x2) {
    const int N = S.N();
    cplx sa = 0.0;
    for (int i = 0; i < S.m(); ++i) sa += 1.0 / (x2 - S.spec().lambda[i]);
    return szego_quadratic_q_formula(S, beta, x2) - (N - 1.0) * (N - 1.0) / (8.0 * N * N) * sa * sa;
}

CanonicalBidifferential::CanonicalBidifferential(const Surface& surface, const HomologyBasis& basis,
                                                 const PeriodData& periods, QuadratureOptions quad)
    : S_(surface), H_(basis), P_(periods), quad_(quad), Ainv_(periods.A.inverse()) {}

cplx CanonicalBidifferential::xi(const SurfacePoint& x, const SurfacePoint& y) const {
    const int N = S_.N(), m = S_.m();
    const cplx z = x.x, w = y.x, d = z - w;
    cplx A0 = 1.0;
    for (int i = 0; i < m; ++i) A0 *= w - S_.spec().lambda[i];
    cplx sum = 1.0;
    for (int l = 1; l < N; ++l) {
        cplx S1 = 0.0;
        for (int i = 0; i < m; ++i) S1 += S_.s_exponent(l, i) / (w - S_.spec().lambda[i]);
        sum += A0 * (1.0 + S1 * d) / (S_.s(x, l) * S_.s(y, N - l));
    }
    return sum / (static_cast<double>(N) * d * d);
}

Eigen::VectorXcd CanonicalBidifferential::xi_periods(const SurfacePoint& y, const QuadratureOptions& q) const {
    const auto M = chain_integrals(S_, H_, H_.a, [&](const SurfacePoint& x) {
        Eigen::VectorXcd v(1);
        v[0] = xi(x, y);
        return v;
    }, 1, q, {y.x});
    return M.col(0);
}

Eigen::VectorXcd CanonicalBidifferential::correction(const SurfacePoint& y) const { return Ainv_ * xi_periods(y); }

cplx CanonicalBidifferential::omega(const SurfacePoint& x, const SurfacePoint& y, const Eigen::VectorXcd& corr) const {
    return xi(x, y) - S_.differentials(x).cwiseProduct(corr).sum();
}

cplx CanonicalBidifferential::omega(const SurfacePoint& x, const SurfacePoint& y) const {
    return omega(x, y, correction(y));
}

double CanonicalBidifferential::a_period_residual(const SurfacePoint& y) const {
    QuadratureOptions fine = quad_;
    fine.order = 2 * quad_.order;
    const Eigen::VectorXcd corr = correction(y);
    const Eigen::VectorXcd xi_a = xi_periods(y, fine);
    const Eigen::MatrixXcd A = P_.A;
    // integral over a_h of omega = Xi_h - sum_c A_hc corr_c
    return (xi_a - A * corr).cwiseAbs().maxCoeff();
}

cplx CanonicalBidifferential::projective_connection(const SurfacePoint& y) const {
    const int N = S_.N(), m = S_.m();
    cplx reg = 0.0;
    for (int l = 1; l < N; ++l) {
        cplx S1 = 0.0, S2 = 0.0;
        for (int i = 0; i < m; ++i) {
            const cplx a = 1.0 / (y.x - S_.spec().lambda[i]);
            S1 += S_.s_exponent(l, i) * a;
            S2 += S_.s_exponent(l, i) * a * a;
        }
        reg += 0.5 * (S2 - S1 * S1);
    }
    reg /= static_cast<double>(N);
    const Eigen::VectorXcd corr = correction(y);
    return reg - S_.differentials(y).cwiseProduct(corr).sum();
}

cplx CanonicalBidifferential::gz_coefficient(int i, int samples, double radius) const {
    const int N = S_.N();
    const double rz = radius * min_branch_separation(S_.spec());
    const double rt = std::pow(rz, 1.0 / N);
    const cplx lam = S_.spec().lambda[i];
    const auto ref = S_.point(lam + rz, 0);
    cplx acc = 0.0;
    for (int k = 0; k < samples; ++k) {
        const cplx t = std::polar(rt, 2 * kPi * (k + 0.5) / samples);
        const auto y = S_.local_point(i, t, ref);
        // G_z dz^2 with dz = N t^{N-1} dt
        const cplx h = projective_connection(y) * static_cast<double>(N * N) * std::pow(t, 2 * N - 2);
        acc += h * std::pow(t, -(N - 2));
    }
    return acc / static_cast<double>(samples);
}

cplx gz_expected(const Surface& S, int i, cplx dlog_detC) {
    const int N = S.N();
    cplx s = 0.0;
    for (int j = 0; j < S.m(); ++j)
        if (j != i)
            s += boost::rational_cast<double>(gamma_exponent(S.spec(), i, j)) / (S.spec().lambda[i] - S.spec().lambda[j]);
    return -static_cast<double>(N) * s - static_cast<double>(N) * dlog_detC;
}

CramerCheck cramer_decomposition_check(const Surface& S, const HomologyBasis& H, const PeriodData& P, int i,
                                       const QuadratureOptions& q) {
    const int g = S.genus(), N = S.N();
    const cplx lam = S.spec().lambda[i];
    const auto& basis = S.basis();
    const Eigen::MatrixXcd B = chain_integrals(S, H, H.a, [&](const SurfacePoint& p) {
        Eigen::VectorXcd w(g);
        for (int c = 0; c < g; ++c) w[c] = std::pow(p.x - lam, basis[c].j - 1) / S.s(p, basis[c].l);
        return w;
    }, g, q);
    const Eigen::MatrixXcd dC = dA_dlambda(S, H, i, q);
    CramerCheck out;
    out.detB = B.determinant();
    out.detC = P.A.determinant();
    out.detB_l.assign(N, 0.0);
    out.sumC_l.assign(N, 0.0);
    for (int l = 1; l < N; ++l) {
        int first = -1;
        for (int c = 0; c < g; ++c) {
            if (basis[c].l != l) continue;
            if (first < 0) first = c;
            Eigen::MatrixXcd Cj = P.A;
            Cj.col(c) = dC.col(c);
            out.sumC_l[l] += Cj.determinant();
        }
        if (first < 0) continue;  // d(l) = 0
        Eigen::MatrixXcd Bl = B;
        Bl.col(first) = dC.col(first);
        out.detB_l[l] = Bl.determinant();
    }
    out.jacobi = out.detC * (P.A.inverse() * dC).trace();
    return out;
}

}  // namespace cyclic
