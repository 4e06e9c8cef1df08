#include "cyclic/surface.hpp"
#include "cyclic/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace cyclic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cplx kI{0.0, 1.0};

// Truncated power series product.
std::vector<cplx> series_mul(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t n) {
    std::vector<cplx> out(n, 0.0);
    for (std::size_t i = 0; i < a.size() && i < n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) out[i + j] += a[i] * b[j];
    return out;
}

// (1 + u/d)^e as a power series in u.
std::vector<cplx> binomial_series(double e, cplx d, std::size_t n) {
    std::vector<cplx> out(n, 0.0);
    cplx coef = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = coef;
        coef *= (e - static_cast<double>(k)) / (static_cast<double>(k + 1) * d);
    }
    return out;
}

// Recursive bisection of [a, b] (parameter plane) until each piece is short
// relative to the distance of the nearest singularity.
void subdivide(double a, double b, const std::function<bool(double, double)>& piece_ok,
               std::vector<std::pair<double, double>>& out, int depth = 0) {
    if (depth > 60) throw NumericalError("path subdivision did not terminate (singularity on path?)");
    if (piece_ok(a, b)) {
        out.emplace_back(a, b);
        return;
    }
    const double mid = 0.5 * (a + b);
    subdivide(a, mid, piece_ok, out, depth + 1);
    subdivide(mid, b, piece_ok, out, depth + 1);
}

}  // namespace

double point_segment_distance(cplx p, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

Surface::Surface(CurveSpec spec) : spec_(std::move(spec)), ram_(validate_curve(spec_)) {
    const int N = spec_.N;
    s_exp_.assign(N, std::vector<double>(spec_.m(), 0.0));
    for (int l = 0; l < N; ++l)
        for (int i = 0; i < spec_.m(); ++i)
            s_exp_[l][i] = static_cast<double>(reduce(static_cast<std::int64_t>(l) * spec_.R[i], N)) / N;
    for (int l = 1; l < N; ++l)
        for (int j = 1; j <= ram_.d[l]; ++j) basis_.push_back({l, j});
    r0_inverse_ = inverse_mod(spec_.R[0], N);
}

SurfacePoint Surface::point(cplx x, int sheet) const {
    SurfacePoint p{x, std::vector<cplx>(m())};
    for (int i = 0; i < m(); ++i) {
        if (x == spec_.lambda[i]) throw InvalidInput("point lies on a branch point");
        p.logs[i] = std::log(x - spec_.lambda[i]);
    }
    const int shift = reduce(static_cast<std::int64_t>(sheet) * r0_inverse_, N());
    p.logs[0] += kI * (kTwoPi * shift);
    return p;
}

int Surface::sheet(const SurfacePoint& p) const {
    std::int64_t s = 0;
    for (int i = 0; i < m(); ++i) {
        const double principal = std::arg(p.x - spec_.lambda[i]);
        const auto k = static_cast<std::int64_t>(std::llround((p.logs[i].imag() - principal) / kTwoPi));
        s += k * spec_.R[i];
    }
    return reduce(s, N());
}

SurfacePoint Surface::continue_to(const SurfacePoint& p, cplx x) const {
    SurfacePoint q{x, p.logs};
    for (int i = 0; i < m(); ++i) {
        const cplx num = x - spec_.lambda[i];
        const cplx den = p.x - spec_.lambda[i];
        if (num == 0.0 || den == 0.0) throw NumericalError("continuation through a branch point");
        q.logs[i] += std::log(num / den);
    }
    return q;
}

SurfacePoint Surface::deck(const SurfacePoint& p, int shift) const {
    SurfacePoint q = p;
    q.logs[0] += kI * (kTwoPi * reduce(static_cast<std::int64_t>(shift) * r0_inverse_, N()));
    return q;
}

cplx Surface::y(const SurfacePoint& p) const {
    cplx e = 0.0;
    for (int i = 0; i < m(); ++i) e += static_cast<double>(spec_.R[i]) * p.logs[i];
    return std::exp(e / static_cast<double>(N()));
}

cplx Surface::s(const SurfacePoint& p, int l) const {
    cplx e = 0.0;
    for (int i = 0; i < m(); ++i) e += s_exp_[l][i] * p.logs[i];
    return std::exp(e);
}

cplx Surface::differential(const SurfacePoint& p, int index) const {
    const auto [l, j] = basis_[index];
    cplx e = 0.0;
    for (int i = 0; i < m(); ++i) e -= s_exp_[l][i] * p.logs[i];
    return std::pow(p.x, j - 1) * std::exp(e);
}

Eigen::VectorXcd Surface::differentials(const SurfacePoint& p) const {
    const int g = genus();
    Eigen::VectorXcd out(g);
    int last_l = -1;
    cplx inv_s = 0.0;
    for (int c = 0; c < g; ++c) {
        const auto [l, j] = basis_[c];
        if (l != last_l) {
            cplx e = 0.0;
            for (int i = 0; i < m(); ++i) e -= s_exp_[l][i] * p.logs[i];
            inv_s = std::exp(e);
            last_l = l;
        }
        out[c] = (j == 1 ? cplx(1.0) : std::pow(p.x, j - 1)) * inv_s;
    }
    return out;
}

cplx Surface::local_parameter(int i, const SurfacePoint& p) const {
    return std::exp(p.logs[i] / static_cast<double>(N()));
}

SurfacePoint Surface::local_point(int i, cplx t, const SurfacePoint& ref) const {
    const cplx lam = spec_.lambda[i];
    const cplx t_ref = local_parameter(i, ref);
    const cplx tn = std::pow(t, N());
    SurfacePoint p{lam + tn, std::vector<cplx>(m())};
    p.logs[i] = ref.logs[i] + static_cast<double>(N()) * std::log(t / t_ref);
    for (int k = 0; k < m(); ++k) {
        if (k == i) continue;
        const cplx d = lam - spec_.lambda[k];
        const cplx at_branch = ref.logs[k] + std::log(d / (ref.x - spec_.lambda[k]));
        p.logs[k] = at_branch + std::log(1.0 + tn / d);
    }
    return p;
}

std::vector<cplx> Surface::local_expansion(int index, int i, int n_terms,
                                           const SurfacePoint& ref) const {
    const auto [l, j] = basis_[index];
    const int Nn = N();
    const cplx lam = spec_.lambda[i];
    const int rho = reduce(static_cast<std::int64_t>(l) * spec_.R[i], Nn);
    const int lead = Nn - 1 - rho;
    const std::size_t nu = static_cast<std::size_t>(std::max(0, n_terms - lead)) / Nn + 2;

    // prefactor: branches of the factors k != i evaluated at lambda_i
    cplx e = 0.0;
    std::vector<cplx> F(nu, 0.0);
    F[0] = 1.0;
    for (int k = 0; k < m(); ++k) {
        if (k == i) continue;
        const cplx d = lam - spec_.lambda[k];
        const cplx at_branch = ref.logs[k] + std::log(d / (ref.x - spec_.lambda[k]));
        e -= s_exp_[l][k] * at_branch;
        F = series_mul(F, binomial_series(-s_exp_[l][k], d, nu), nu);
    }
    // (lambda_i + u)^{j-1}
    std::vector<cplx> poly(nu, 0.0);
    {
        cplx binom = 1.0;
        for (int a = 0; a <= j - 1 && static_cast<std::size_t>(a) < nu; ++a) {
            poly[a] = binom * std::pow(lam, j - 1 - a);
            binom *= static_cast<double>(j - 1 - a) / (a + 1);
        }
    }
    F = series_mul(F, poly, nu);
    // the branch of t itself: x - lambda_i = t^N with t = exp(L_i/N) at ref,
    // and (x - lambda_i)^{-rho/N} = t^{-rho}
    const cplx pref = static_cast<double>(Nn) * std::exp(e);
    std::vector<cplx> out(n_terms, 0.0);
    for (std::size_t n = 0; n < nu; ++n) {
        const std::size_t a = lead + Nn * n;
        if (a < static_cast<std::size_t>(n_terms)) out[a] = pref * F[n];
    }
    return out;
}

double Surface::branch_distance(cplx x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const cplx& lam : spec_.lambda) d = std::min(d, std::abs(x - lam));
    return d;
}

double Surface::segment_clearance(cplx a, cplx b, int skip) const {
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m(); ++i)
        if (i != skip) d = std::min(d, point_segment_distance(spec_.lambda[i], a, b));
    return d;
}

SurfacePoint Surface::endpoint(const SurfacePath& path) const {
    if (path.vertices.empty() || path.vertices.front() != path.start.x)
        throw InvalidInput("path must start at its start point");
    SurfacePoint p = path.start;
    for (std::size_t v = 1; v < path.vertices.size(); ++v) p = continue_to(p, path.vertices[v]);
    return p;
}

int Surface::continue_sheet(const SurfacePath& path) const {
    const double delta = 1e-2 * min_branch_separation(spec_);
    for (std::size_t v = 1; v < path.vertices.size(); ++v)
        if (segment_clearance(path.vertices[v - 1], path.vertices[v]) < delta)
            throw NumericalError("path segment violates branch-point clearance");
    return sheet(endpoint(path));
}

PathNodes Surface::discretize(const SurfacePath& path, int order, double max_piece,
                             const std::vector<cplx>& avoid) const {
    const auto& rule = gauss_legendre(order);
    PathNodes out;
    SurfacePoint cur = path.start;
    if (path.vertices.empty() || path.vertices.front() != path.start.x)
        throw InvalidInput("path must start at its start point");

    for (std::size_t v = 1; v < path.vertices.size(); ++v) {
        const cplx a = path.vertices[v - 1], b = path.vertices[v];
        if (a == b) continue;
        std::vector<std::pair<double, double>> pieces;
        subdivide(0.0, 1.0, [&](double s0, double s1) {
            const cplx pa = a + s0 * (b - a), pb = a + s1 * (b - a);
            const double len = std::abs(pb - pa);
            double clear = segment_clearance(pa, pb);
            for (const cplx& z : avoid) clear = std::min(clear, point_segment_distance(z, pa, pb));
            return len <= max_piece && len <= 0.5 * clear;
        }, pieces);
        for (const auto& [s0, s1] : pieces) {
            const cplx pa = a + s0 * (b - a), pb = a + s1 * (b - a);
            const SurfacePoint start = (s0 == 0.0) ? cur : continue_to(cur, pa);
            const cplx half = 0.5 * (pb - pa), mid = 0.5 * (pa + pb);
            for (int q = 0; q < rule.order(); ++q) {
                out.points.push_back(continue_to(start, mid + half * rule.nodes[q]));
                out.weights.push_back(half * rule.weights[q]);
            }
        }
        cur = continue_to(cur, b);
    }

    const cplx xe = path.vertices.back();
    if (path.terminal == SurfacePath::Terminal::Branch) {
        const int i = path.terminal_branch;
        const cplx lam = spec_.lambda[i];
        const cplx span = xe - lam;
        const double Nd = N();
        // singular parameters s with s^N = (lambda_k - lambda_i)/span
        std::vector<cplx> sing;
        for (int k = 0; k < m(); ++k) {
            if (k == i) continue;
            const cplx base = std::pow((spec_.lambda[k] - lam) / span, 1.0 / Nd);
            for (int r = 0; r < N(); ++r) sing.push_back(base * std::polar(1.0, kTwoPi * r / Nd));
        }
        std::vector<std::pair<double, double>> pieces;
        subdivide(0.0, 1.0, [&](double s0, double s1) {
            double d = std::numeric_limits<double>::infinity();
            for (const cplx& z : sing) d = std::min(d, point_segment_distance(z, s0, s1));
            return (s1 - s0) <= 0.25 && (s1 - s0) <= 0.5 * d;
        }, pieces);
        for (const auto& [s0, s1] : pieces) {
            const double half = 0.5 * (s1 - s0), mid = 0.5 * (s0 + s1);
            for (int q = 0; q < rule.order(); ++q) {
                const double s = mid + half * rule.nodes[q];
                const cplx x = lam + span * std::pow(s, N());
                SurfacePoint p{x, cur.logs};
                for (int k = 0; k < m(); ++k) {
                    if (k == i)
                        p.logs[k] = cur.logs[k] + Nd * std::log(s);
                    else
                        p.logs[k] = cur.logs[k] + std::log((x - spec_.lambda[k]) / (xe - spec_.lambda[k]));
                }
                const cplx dxds = Nd * std::pow(s, N() - 1) * span;
                out.points.push_back(std::move(p));
                out.weights.push_back(-half * rule.weights[q] * dxds);
            }
        }
    } else if (path.terminal == SurfacePath::Terminal::Infinity) {
        const cplx c = path.ray_center;
        const cplx dir = xe - c;
        std::vector<cplx> sing;
        for (const cplx& lam : spec_.lambda) sing.push_back(dir / (lam - c));
        std::vector<std::pair<double, double>> pieces;
        subdivide(0.0, 1.0, [&](double s0, double s1) {
            double d = std::numeric_limits<double>::infinity();
            for (const cplx& z : sing) d = std::min(d, point_segment_distance(z, s0, s1));
            return (s1 - s0) <= 0.25 && (s1 - s0) <= 0.5 * d;
        }, pieces);
        for (const auto& [s0, s1] : pieces) {
            const double half = 0.5 * (s1 - s0), mid = 0.5 * (s0 + s1);
            for (int q = 0; q < rule.order(); ++q) {
                const double sg = mid + half * rule.nodes[q];
                const cplx x = c + dir / sg;
                SurfacePoint p{x, cur.logs};
                for (int k = 0; k < m(); ++k)
                    p.logs[k] = cur.logs[k] + std::log((x - spec_.lambda[k]) / (xe - spec_.lambda[k]));
                out.points.push_back(std::move(p));
                out.weights.push_back(half * rule.weights[q] * dir / (sg * sg));
            }
        }
    }
    return out;
}

}  // namespace cyclic
