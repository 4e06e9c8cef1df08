#include "doctest.h"

#include "cyclic/abeljacobi.hpp"
#include "cyclic/divisors.hpp"

using namespace cyclic;

namespace {
CurveSpec t1() { return {2, {1, 1, 1, 1}, {{0, 0}, {1, 0}, {2, 0}, {4, 0}}, {0.5, -2.0}}; }
CurveSpec t2() { return {3, {1, 1, 2, 2}, {{0, 0}, {1, 0}, {0, 1}, {3, 0}}, {0.5, -2.0}}; }

struct Fixture {
    Surface S;
    HomologyBasis H;
    PeriodData P;
    Jacobian J;
    explicit Fixture(CurveSpec spec)
        : S(std::move(spec)), H(build_basis(S)), P(compute_periods(S, H)), J(S, H, P) {}
};
}  // namespace

TEST_CASE("Abel map basics") {
    for (auto spec : {t1(), t2()}) {
        Fixture f(spec);
        const auto& J = f.J;
        CHECK(J.abel(Place::regular(spec.base_x, 0)).norm() < 1e-14);
        for (const auto& pl : random_places(f.S, 6, 5)) {
            const auto u0 = J.abel(pl, 0), u1 = J.abel(pl, 1), u2 = J.abel(pl, 3);
            CHECK(J.lattice_distance(u0 - u1) < 1e-8);
            CHECK(J.lattice_distance(u0 - u2) < 1e-8);
            // the deck orbit of a point is a fibre, equivalent to the fibre at infinity
            Eigen::VectorXcd orbit = Eigen::VectorXcd::Zero(f.S.genus()), at_inf = orbit;
            for (int s = 0; s < f.S.N(); ++s) {
                Place moved = pl;
                moved.sheet = s;
                orbit += J.abel(moved);
                at_inf += J.abel(Place::infinity(s));
            }
            CHECK(J.lattice_distance(orbit - at_inf) < 1e-8);
        }
        for (int i = 0; i < f.S.m(); ++i)
            CHECK(J.lattice_distance(J.abel(Place::branch_point(i), 0) - J.abel(Place::branch_point(i), 2)) < 1e-8);
        // fibres are linearly equivalent: the infinite fibre and the fibre over a point
        Eigen::VectorXcd inf = Eigen::VectorXcd::Zero(f.S.genus()), fib = inf, bp = inf;
        for (int s = 0; s < f.S.N(); ++s) {
            inf += J.abel(Place::infinity(s));
            fib += J.abel(Place::regular({2.7, 1.3}, s));
        }
        CHECK(J.lattice_distance(inf - fib) < 1e-8);
        // N P_i is a fibre as well
        for (int i = 0; i < f.S.m(); ++i)
            CHECK(J.lattice_distance(double(f.S.N()) * J.abel(Place::branch_point(i)) - inf) < 1e-8);
    }
}

TEST_CASE("Riemann constant by half-period search") {
    for (auto spec : {t1(), t2()}) {
        Fixture f(spec);
        const auto K = riemann_constant(f.J, 3);
        CHECK(K.best_residual < 1e-6);
        CHECK(K.second_residual > 10 * K.best_residual);
        const int g = f.S.genus();
        const auto fresh = random_places(f.S, 20 * std::max(1, g - 1), 77);
        for (int d = 0; d < 20; ++d) {
            Eigen::VectorXcd v = K.K;
            for (int k = 0; k < g - 1; ++k) v += f.J.abel(fresh[d * (g - 1) + k]);
            CHECK(theta_modulus(f.J.reduce(v), f.P.tau) < 1e-6 * K.scale);
        }
        // 2K + u(div dx) is a lattice vector
        Eigen::VectorXcd u_div = Eigen::VectorXcd::Zero(g);
        for (int i = 0; i < f.S.m(); ++i) u_div += double(f.S.N() - 1) * f.J.abel(Place::branch_point(i));
        for (int s = 0; s < f.S.N(); ++s) u_div -= 2.0 * f.J.abel(Place::infinity(s));
        CHECK(f.J.lattice_distance(2.0 * K.K + u_div) < 1e-8);
    }
}

TEST_CASE("divisor points: torsion, shifts and negation") {
    for (auto spec : {t1(), t2()}) {
        Fixture f(spec);
        const auto K = riemann_constant(f.J, 3);
        for (const auto& v : enumerate_admissible(spec)) {
            const auto e = divisor_point(f.J, K, v.beta);
            CHECK(e.char_residual < 1e-6);
            const double den = 2.0 * spec.N;
            for (int k = 0; k < f.S.genus(); ++k) {
                CHECK(std::abs((*e.char_a)[k] * den - std::round((*e.char_a)[k] * den)) < 1e-12);
                CHECK(std::abs((*e.char_b)[k] * den - std::round((*e.char_b)[k] * den)) < 1e-12);
            }
            const auto n = divisor_point(f.J, K, negate(spec, v.beta));
            CHECK(f.J.lattice_distance(n.z + e.z) < 1e-6);
            for (int k = 1; k < spec.N; ++k) {
                const auto E = equivalence_shift(spec, v.beta, k);
                // the shifted vector is admissible again only when its profile is zero
                const auto prof = tau_profile(spec, E.beta);
                if (!prof.admissible()) continue;
                CHECK(f.J.lattice_distance(divisor_point(f.J, K, E.beta).z - e.z) < 1e-6);
            }
        }
    }
}
