#include "cyclic/homology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace cyclic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(cplx u, cplx v) { return (std::conj(u) * v).imag(); }

struct Frame {
    double sep, scale, re_min, re_max, im_min;
};

Frame frame_of(const Surface& S) {
    Frame f{min_branch_separation(S.spec()), branch_scale(S.spec()),
            std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
    for (const cplx& l : S.spec().lambda) {
        f.re_min = std::min(f.re_min, l.real());
        f.re_max = std::max(f.re_max, l.real());
        f.im_min = std::min(f.im_min, l.imag());
    }
    return f;
}

// Base points sit strictly below every branch point, so arg(base - lambda_k)
// stays inside (-pi, 0) and the principal-log sheet labels of the start point
// vary continuously under small deformations.
void place_cycle(const Surface& S, GeneratorCycle& c, std::mt19937_64& rng, int poly) {
    const Frame f = frame_of(S);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int attempt = 0; attempt < 500; ++attempt) {
        c.base = {f.re_min - 0.5 * f.scale + U(rng) * (f.re_max - f.re_min + f.scale),
                  f.im_min - (0.25 + 0.75 * U(rng)) * f.scale};
        for (auto& leg : c.legs) leg.radius = (0.12 + 0.18 * U(rng)) * f.sep;
        if (generator_clearance(S, c, poly) >= 0.08 * f.sep) return;
    }
    throw NumericalError("could not place a lasso with sufficient clearance");
}

std::vector<SurfacePoint> vertex_points(const Surface& S, const SurfacePath& p) {
    std::vector<SurfacePoint> pts{p.start};
    for (std::size_t v = 1; v < p.vertices.size(); ++v) pts.push_back(S.continue_to(pts.back(), p.vertices[v]));
    return pts;
}

// e_k <- e_k + c e_p on the Gram matrix W and the basis E
void add_multiple(IntMatrix& W, IntMatrix& E, std::size_t k, std::size_t p, std::int64_t c) {
    if (c == 0) return;
    const std::size_t n = W.size();
    for (std::size_t j = 0; j < n; ++j) W[k][j] += c * W[p][j];
    for (std::size_t i = 0; i < n; ++i) W[i][k] += c * W[i][p];
    for (std::size_t j = 0; j < E[k].size(); ++j) {
        E[k][j] += c * E[p][j];
        if (std::abs(E[k][j]) > (std::int64_t{1} << 40)) throw NumericalError("symplectic reduction overflow");
    }
}

void swap_index(IntMatrix& W, IntMatrix& E, std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(W[i], W[j]);
    for (auto& row : W) std::swap(row[i], row[j]);
    std::swap(E[i], E[j]);
}

}  // namespace

SurfacePath generator_path(const Surface& S, const GeneratorCycle& c, int poly) {
    SurfacePath p;
    p.start = S.point(c.base, c.sheet);
    p.vertices.push_back(c.base);
    for (const auto& leg : c.legs) {
        const cplx lam = S.spec().lambda[leg.branch];
        const cplx dir = (c.base - lam) / std::abs(c.base - lam);
        p.vertices.push_back(lam + leg.radius * dir);
        const int sgn = leg.turns > 0 ? 1 : -1;
        const int steps = std::abs(leg.turns) * poly;
        for (int t = 1; t <= steps; ++t)
            p.vertices.push_back(lam + leg.radius * dir * std::polar(1.0, sgn * kTwoPi * t / poly));
        p.vertices.push_back(c.base);
    }
    return p;
}

double generator_clearance(const Surface& S, const GeneratorCycle& c, int poly) {
    const auto p = generator_path(S, c, poly);
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t v = 1; v < p.vertices.size(); ++v)
        d = std::min(d, S.segment_clearance(p.vertices[v - 1], p.vertices[v]));
    return d;
}

std::vector<int> monodromy_shifts(const Surface& S) {
    std::mt19937_64 rng(12345);
    std::vector<int> out;
    for (int i = 0; i < S.m(); ++i) {
        GeneratorCycle c;
        c.legs = {{i, 1, 0.0}};
        place_cycle(S, c, rng, 12);
        const int s = S.continue_sheet(generator_path(S, c, 12));
        out.push_back(reduce(s - c.sheet, S.N()));
    }
    return out;
}

std::int64_t intersection_number(const Surface& S, const SurfacePath& A, const SurfacePath& B) {
    const auto pa = vertex_points(S, A), pb = vertex_points(S, B);
    const double eps = 1e-9;
    std::int64_t total = 0;
    for (std::size_t u = 1; u < pa.size(); ++u) {
        const cplx a0 = pa[u - 1].x, da = pa[u].x - a0;
        if (da == 0.0) continue;
        for (std::size_t v = 1; v < pb.size(); ++v) {
            const cplx b0 = pb[v - 1].x, db = pb[v].x - b0;
            if (db == 0.0) continue;
            const double den = cross(da, db);
            if (std::abs(den) < 1e-12 * std::abs(da) * std::abs(db)) {
                // parallel: only an overlap is a problem
                const double off = std::abs(cross(da, b0 - a0)) / std::abs(da);
                if (off < eps * (1.0 + std::abs(a0))) {
                    const double s0 = ((b0 - a0) * std::conj(da)).real() / std::norm(da);
                    const double s1 = ((b0 + db - a0) * std::conj(da)).real() / std::norm(da);
                    if (std::max(s0, s1) > -eps && std::min(s0, s1) < 1 + eps)
                        throw NumericalError("overlapping cycle segments");
                }
                continue;
            }
            const double s = cross(b0 - a0, db) / den;
            const double t = cross(b0 - a0, da) / den;
            if (s < -eps || s > 1 + eps || t < -eps || t > 1 + eps) continue;
            if (s < eps || s > 1 - eps || t < eps || t > 1 - eps)
                throw NumericalError("cycles cross at a vertex");
            const cplx x = a0 + s * da;
            if (S.sheet(S.continue_to(pa[u - 1], x)) == S.sheet(S.continue_to(pb[v - 1], x)))
                total += den > 0 ? 1 : -1;
        }
    }
    return total;
}

SymplecticReduction skew_reduce(const IntMatrix& M) {
    const std::size_t n = M.size();
    IntMatrix W = M;
    IntMatrix E(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) E[i][i] = 1;
    SymplecticReduction out;
    std::size_t k0 = 0;
    while (k0 + 1 < n) {
        // smallest nonzero entry in the remaining block
        std::int64_t best = 0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = k0; i < n; ++i)
            for (std::size_t j = k0; j < n; ++j)
                if (W[i][j] != 0 && (best == 0 || std::abs(W[i][j]) < best)) {
                    best = std::abs(W[i][j]);
                    bi = i;
                    bj = j;
                }
        if (best == 0) break;
        swap_index(W, E, k0, bi);
        if (bj == k0) bj = bi;
        swap_index(W, E, k0 + 1, bj);
        const std::int64_t d = W[k0][k0 + 1];
        bool clean = true;
        for (std::size_t k = k0 + 2; k < n && clean; ++k) {
            add_multiple(W, E, k, k0 + 1, -(W[k0][k] / d));
            add_multiple(W, E, k, k0, W[k0 + 1][k] / d);
            clean = W[k0][k] == 0 && W[k0 + 1][k] == 0;
        }
        if (!clean) continue;  // a smaller remainder becomes the next pivot
        if (d < 0) swap_index(W, E, k0, k0 + 1);
        out.invariants.push_back(std::abs(d));
        k0 += 2;
    }
    for (std::size_t r = 0; r < 2 * out.invariants.size(); ++r) out.transform.push_back(E[r]);
    return out;
}

HomologyBasis build_basis(const Surface& S, std::uint64_t seed) {
    const int N = S.N(), m = S.m(), g = S.genus();
    if (g == 0) throw InvalidInput("genus zero curve has no homology basis");
    std::string last_error;
    for (int attempt = 0; attempt < 20; ++attempt) {
        HomologyBasis H;
        H.seed = seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull;
        std::mt19937_64 rng(H.seed);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                const int k = reduce(static_cast<std::int64_t>(S.spec().R[i]) * inverse_mod(S.spec().R[j], N), N);
                for (int s = 0; s < N; ++s) {
                    GeneratorCycle c;
                    c.sheet = s;
                    c.legs = {{i, 1, 0.0}, {j, -k, 0.0}};
                    std::ostringstream label;
                    label << "l" << i + 1 << "*l" << j + 1 << "^-" << k << "@" << s;
                    c.label = label.str();
                    place_cycle(S, c, rng, H.polygon_vertices);
                    H.generators.push_back(std::move(c));
                }
            }
        const std::size_t n = H.generators.size();
        std::vector<SurfacePath> paths;
        H.min_clearance = std::numeric_limits<double>::infinity();
        for (const auto& c : H.generators) {
            paths.push_back(generator_path(S, c, H.polygon_vertices));
            if (S.continue_sheet(paths.back()) != c.sheet) throw NumericalError("generator cycle does not close");
            H.min_clearance = std::min(H.min_clearance, generator_clearance(S, c, H.polygon_vertices));
        }
        H.generator_intersections.assign(n, std::vector<std::int64_t>(n, 0));
        try {
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q) {
                    const auto v = intersection_number(S, paths[p], paths[q]);
                    H.generator_intersections[p][q] = v;
                    H.generator_intersections[q][p] = -v;
                }
        } catch (const NumericalError& e) {
            last_error = e.what();
            continue;
        }
        const auto red = skew_reduce(H.generator_intersections);
        const bool unimodular = std::all_of(red.invariants.begin(), red.invariants.end(),
                                            [](std::int64_t d) { return d == 1; });
        if (static_cast<int>(red.invariants.size()) != g || !unimodular) {
            std::ostringstream msg;
            msg << "homology generators have rank " << 2 * red.invariants.size() << " (expected " << 2 * g
                << ") or non-unit invariants";
            throw NumericalError(msg.str());
        }
        for (int h = 0; h < g; ++h) {
            H.a.push_back(red.transform[2 * h]);
            H.b.push_back(red.transform[2 * h + 1]);
        }
        // intersection matrix of the basis, recomputed from the generator data
        IntMatrix rows = H.a;
        rows.insert(rows.end(), H.b.begin(), H.b.end());
        H.intersection.assign(2 * g, std::vector<std::int64_t>(2 * g, 0));
        for (int r = 0; r < 2 * g; ++r)
            for (int c = 0; c < 2 * g; ++c)
                for (std::size_t p = 0; p < n; ++p)
                    if (rows[r][p] != 0)
                        for (std::size_t q = 0; q < n; ++q)
                            H.intersection[r][c] += rows[r][p] * H.generator_intersections[p][q] * rows[c][q];
        for (int r = 0; r < 2 * g; ++r)
            for (int c = 0; c < 2 * g; ++c) {
                const std::int64_t want = (c == r + g) ? 1 : (r == c + g ? -1 : 0);
                if (H.intersection[r][c] != want) throw NumericalError("symplectic reduction failed to reach J");
            }
        return H;
    }
    throw NumericalError("degenerate cycle geometry for every seed: " + last_error);
}

double check_transport(const Surface& S, const HomologyBasis& H) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& c : H.generators) {
        for (int k = 0; k < S.m(); ++k)
            if ((c.base - S.spec().lambda[k]).imag() >= 0.0)
                throw NumericalError("deformation moved a branch point above a cycle base point");
        d = std::min(d, generator_clearance(S, c, H.polygon_vertices));
    }
    if (d < 0.25 * H.min_clearance) throw NumericalError("deformation destroyed cycle clearance");
    return d;
}

}  // namespace cyclic
