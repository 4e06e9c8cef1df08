#include "doctest.h"

#include <numbers>

#include "cyclic/divisors.hpp"
#include "cyclic/kernels.hpp"

using namespace cyclic;

namespace {
CurveSpec t1() { return {2, {1, 1, 1, 1}, {{0, 0}, {1, 0}, {2, 0}, {4, 0}}, {0.5, -2.0}}; }
CurveSpec t2() { return {3, {1, 1, 2, 2}, {{0, 0}, {1, 0}, {0, 1}, {3, 0}}, {0.5, -2.0}}; }

// Taylor coefficients of h(d) = F(P, Q)(x_2 - x_1), P at x_2 + d on Q's sheet, by sampling a circle
std::vector<cplx> sampled_coefficients(const Surface& S, const std::vector<int>& beta, const SurfacePoint& Q,
                                       double rho, int M, int count) {
    std::vector<cplx> c(count, 0.0);
    for (int k = 0; k < M; ++k) {
        const cplx d = std::polar(rho, 2 * std::numbers::pi * (k + 0.25) / M);
        const auto P = S.continue_to(Q, Q.x + d);
        const cplx h = szego_eval(S, beta, P, Q) * (-d);
        for (int n = 0; n < count; ++n) c[n] += h * std::pow(d, -n) / double(M);
    }
    return c;
}
}  // namespace

TEST_CASE("Szego kernel expansion: constant, linear and quadratic terms") {
    for (auto spec : {t1(), t2()}) {
        Surface S(spec);
        const auto adm = enumerate_admissible(spec);
        const cplx xs[] = {{2.7, 1.3}, {-0.6, 0.4}, {1.5, -0.8}};
        for (const auto& v : adm)
            for (cplx x2 : xs)
                for (int sheet = 0; sheet < S.N(); ++sheet) {
                    const auto Q = S.point(x2, sheet);
                    const auto series = szego_expansion(S, v.beta, x2, 6);
                    const auto sampled = sampled_coefficients(S, v.beta, Q, 0.05, 64, 4);
                    CHECK(std::abs(series[0] - 1.0) < 1e-14);
                    CHECK(std::abs(sampled[0] - 1.0) < 1e-12);
                    CHECK(std::abs(series[1]) < 1e-14);
                    CHECK(std::abs(sampled[1]) < 1e-10);
                    CHECK(std::abs(sampled[2] - series[2]) < 1e-9 * std::abs(series[2]));
                    CHECK(std::abs(sampled[3] - series[3]) < 1e-8 * std::abs(series[3]) + 1e-12);
                    CHECK(std::abs(szego_quadratic_exact(S, v.beta, x2) - series[2]) < 1e-12 * std::abs(series[2]));
                }
    }
}

TEST_CASE("the q-formula differs from the expansion by the (N-1)^2/(4N) shift") {
    Surface S(t2());
    const std::vector<int> beta{0, 1, 1, 2};
    const cplx x2(2.7, 1.3);
    cplx sa = 0.0;
    for (const cplx& l : S.spec().lambda) sa += 1.0 / (x2 - l);
    const cplx diff = szego_quadratic_q_formula(S, beta, x2) - szego_expansion(S, beta, x2, 3)[2];
    CHECK(std::abs(diff - 4.0 / (8.0 * 9.0) * sa * sa) < 1e-13);
}

TEST_CASE("Szego kernel is regular across sheets of one fibre") {
    for (auto spec : {t1(), t2()}) {
        Surface S(spec);
        const auto beta = enumerate_admissible(spec).front().beta;
        const auto Q = S.point({2.7, 1.3}, 0);
        for (int s = 1; s < S.N(); ++s) {
            const auto Qs = S.deck(Q, s);
            double prev = 0.0;
            for (double d : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
                const auto P = S.continue_to(Qs, Qs.x + cplx(d, 0.3 * d));
                const double v = std::abs(szego_eval(S, beta, P, Q));
                CHECK(v < 1e3);
                if (prev > 0) CHECK(std::abs(v - prev) < 0.5 * prev + 1e-3);
                prev = v;
            }
        }
    }
}

TEST_CASE("canonical bidifferential: periods, symmetry, diagonal") {
    for (auto spec : {t1(), t2()}) {
        Surface S(spec);
        const auto H = build_basis(S);
        const auto P = compute_periods(S, H);
        CanonicalBidifferential W(S, H, P);
        const cplx pts[] = {{2.7, 1.3}, {-0.6, 0.4}, {1.5, -0.8}, {3.3, -0.4}, {0.6, 2.1}};
        for (int a = 0; a < 5; ++a) {
            const auto y = S.point(pts[a], a % S.N());
            CHECK(W.a_period_residual(y) < 1e-10);
            for (int b = a + 1; b < 5; ++b) {
                const auto x = S.point(pts[b], (a + b) % S.N());
                const cplx o1 = W.omega(x, y), o2 = W.omega(y, x);
                CHECK(std::abs(o1 - o2) < 1e-9 * std::abs(o1));
            }
            for (double d : {1e-3, 1e-5}) {
                const auto x = S.continue_to(y, y.x + cplx(d, 0.5 * d));
                const cplx dz = x.x - y.x;
                const cplx val = W.omega(x, y) * dz * dz;
                CHECK(std::abs(val - 1.0) < 10 * d * d * (1.0 + std::abs(W.projective_connection(y))));
                // next term is G_z dz^2
                if (d == 1e-3) CHECK(std::abs((val - 1.0) / (dz * dz) - W.projective_connection(y)) < 50 * d * (1.0 + std::abs(W.projective_connection(y))));
            }
        }
    }
}

TEST_CASE("determinant identities") {
    for (auto spec : {t1(), t2()}) {
        Surface S(spec);
        const auto H = build_basis(S);
        const auto P = compute_periods(S, H);
        for (int i = 0; i < S.m(); ++i) {
            const auto c = cramer_decomposition_check(S, H, P, i);
            CHECK(std::abs(c.detB - c.detC) < 1e-12 * std::abs(c.detC));
            cplx total = 0.0;
            for (int l = 1; l < S.N(); ++l) {
                CHECK(std::abs(c.detB_l[l] - c.sumC_l[l]) < 1e-10 * std::abs(c.sumC_l[l]) + 1e-14);
                total += c.sumC_l[l];
            }
            CHECK(std::abs(total - c.jacobi) < 1e-10 * std::abs(c.jacobi));
        }
    }
}

TEST_CASE("G_z coefficient at branch points") {
    for (auto spec : {t1(), t2()}) {
        Surface S(spec);
        const auto H = build_basis(S);
        const auto P = compute_periods(S, H);
        CanonicalBidifferential W(S, H, P);
        for (int i = 0; i < S.m(); ++i) {
            const cplx got = W.gz_coefficient(i);
            const cplx want = gz_expected(S, i, dlog_detC_jacobi(S, H, P, i));
            CHECK(std::abs(got - want) < 1e-6 * std::abs(want));
            CHECK(std::abs(W.gz_coefficient(i, 48) - got) < 1e-8 * std::abs(got));
        }
    }
}

TEST_CASE("product of the kernels for beta and its negation") {
    const cplx x2{2.7, 1.3};
    for (auto spec : {t1(), t2()}) {
        Surface S(spec);
        const double N = spec.N;
        for (const auto& v : enumerate_admissible(spec)) {
            const auto nb = negate(spec, v.beta);
            const auto e1 = szego_expansion(S, v.beta, x2, 4), e2 = szego_expansion(S, nb, x2, 4);
            const cplx quad = e1[2] + e2[2] + e1[1] * e2[1];
            cplx qsum = 0.0, sa = 0.0;
            for (int i = 0; i < spec.m(); ++i) {
                sa += 1.0 / (x2 - spec.lambda[i]);
                for (int j = 0; j < spec.m(); ++j) {
                    CHECK(q_exponent(spec, v.beta, i, j) == q_exponent(spec, nb, i, j));
                    qsum += boost::rational_cast<double>(q_exponent(spec, v.beta, i, j)) /
                            ((x2 - spec.lambda[i]) * (x2 - spec.lambda[j]));
                }
            }
            const cplx shift = (N - 1) * (N - 1) / (4 * N * N) * sa * sa;
            CHECK(std::abs(quad - (qsum / N - shift)) < 1e-12);
            CHECK(std::abs(quad - qsum / N) > 1e-3);
        }
    }
}
