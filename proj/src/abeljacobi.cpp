#include "cyclic/abeljacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cyclic/divisors.hpp"

namespace cyclic {

namespace {
constexpr double kPi = std::numbers::pi;
}

Jacobian::Jacobian(const Surface& surface, const HomologyBasis& basis, const PeriodData& periods,
                   QuadratureOptions quad)
    : S_(surface), H_(basis), P_(periods), quad_(quad), Ainv_(periods.A.inverse()) {
    sep_ = min_branch_separation(S_.spec());
    scale_ = branch_scale(S_.spec());
    centroid_ = 0.0;
    for (const cplx& l : S_.spec().lambda) centroid_ += l;
    centroid_ /= static_cast<double>(S_.m());
    // ray direction with the largest angular clearance from the branch points
    double best = -1.0;
    for (int k = 0; k < 64; ++k) {
        const cplx d = std::polar(1.0, -kPi / 2 + 2 * kPi * k / 64);
        const double c = S_.segment_clearance(centroid_, centroid_ + 4.0 * scale_ * d);
        if (c > best + 1e-12) {
            best = c;
            ray_dir_ = d;
        }
    }
}

std::vector<cplx> Jacobian::route_vertices(cplx from, cplx to, int route) const {
    const double need = 0.1 * sep_;
    if (route == 0 && S_.segment_clearance(from, to) >= need) return {from, to};
    // one waypoint, picked from a ring of candidates; `route` skips the best ones
    std::vector<std::pair<double, cplx>> options;
    for (int ring = 1; ring <= 3; ++ring)
        for (int k = 0; k < 32; ++k) {
            const cplx w = 0.5 * (from + to) + 0.4 * ring * scale_ * std::polar(1.0, 2 * kPi * (k + 0.5) / 32);
            const double c = std::min(S_.segment_clearance(from, w), S_.segment_clearance(w, to));
            options.emplace_back(c, w);
        }
    std::stable_sort(options.begin(), options.end(), [](auto& a, auto& b) { return a.first > b.first; });
    const auto& pick = options.at(static_cast<std::size_t>(std::max(0, route - 1)) * 7 % options.size());
    if (pick.first < 1e-2 * sep_) throw NumericalError("no path with clearance to the requested place");
    return {from, pick.second, to};
}

SurfacePath Jacobian::regular_path(cplx x, int sheet, int route) const {
    const cplx base = S_.spec().base_x;
    SurfacePath p;
    p.start = S_.point(base, 0);
    const auto verts = route_vertices(base, x, route);
    p.vertices = verts;
    const int reached = S_.sheet(S_.endpoint(p));
    const int missing = cyclic::reduce(sheet - reached, S_.N());
    if (missing == 0) return p;
    // prepend loops around the branch point whose stem from the base has most clearance
    int best_k = 0;
    double best_c = -1.0;
    for (int k = 0; k < S_.m(); ++k) {
        GeneratorCycle c;
        c.base = base;
        c.legs = {{k, 1, 0.25 * sep_}};
        const double cl = generator_clearance(S_, c, H_.polygon_vertices);
        if (cl > best_c) {
            best_c = cl;
            best_k = k;
        }
    }
    GeneratorCycle loop;
    loop.base = base;
    loop.legs = {{best_k, cyclic::reduce(static_cast<std::int64_t>(missing) * inverse_mod(S_.spec().R[best_k], S_.N()), S_.N()),
                  0.25 * sep_}};
    SurfacePath q = generator_path(S_, loop, H_.polygon_vertices);
    q.vertices.insert(q.vertices.end(), verts.begin() + 1, verts.end());
    if (S_.sheet(S_.endpoint(q)) != sheet) throw NumericalError("sheet correction failed");
    return q;
}

SurfacePath Jacobian::path_to(const Place& place, int route) const {
    switch (place.kind) {
        case Place::Kind::Regular:
            return regular_path(place.x, place.sheet, route);
        case Place::Kind::Branch: {
            const cplx lam = S_.spec().lambda[place.branch];
            const cplx base = S_.spec().base_x;
            const cplx dir = (base - lam) / std::abs(base - lam) * std::polar(1.0, 0.3 * route);
            SurfacePath p = regular_path(lam + 0.3 * sep_ * dir, 0, route);
            p.terminal = SurfacePath::Terminal::Branch;
            p.terminal_branch = place.branch;
            return p;
        }
        case Place::Kind::Infinity: {
            // the place is labelled by the sheet of far points on the ray
            const cplx start = centroid_ + 2.0 * scale_ * ray_dir_;
            const auto far = S_.point(centroid_ + 1e8 * scale_ * ray_dir_, place.sheet);
            const int sheet_here = S_.sheet(S_.continue_to(far, start));
            SurfacePath p = regular_path(start, sheet_here, route);
            p.terminal = SurfacePath::Terminal::Infinity;
            p.ray_center = centroid_;
            return p;
        }
    }
    throw InvalidInput("unknown place kind");
}

Eigen::VectorXcd Jacobian::integrate(const SurfacePath& path) const {
    const auto nodes = S_.discretize(path, quad_.order, quad_.max_piece * scale_);
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(genus());
    for (std::size_t k = 0; k < nodes.points.size(); ++k) w += S_.differentials(nodes.points[k]) * nodes.weights[k];
    return Ainv_.transpose() * w;
}

Eigen::VectorXcd Jacobian::abel(const Place& place, int route) const { return integrate(path_to(place, route)); }

std::pair<Eigen::VectorXd, Eigen::VectorXd> Jacobian::coordinates(const Eigen::VectorXcd& z) const {
    const Eigen::MatrixXd Y = P_.tau.imag(), X = P_.tau.real();
    const Eigen::VectorXd a = Y.ldlt().solve(z.imag());
    const Eigen::VectorXd b = z.real() - X * a;
    return {a, b};
}

Eigen::VectorXcd Jacobian::reduce(const Eigen::VectorXcd& z) const {
    auto [a, b] = coordinates(z);
    const Eigen::VectorXd ra = (a.array() + 0.5).floor().matrix(), rb = (b.array() + 0.5).floor().matrix();
    return z - P_.tau * ra.cast<cplx>() - rb.cast<cplx>();
}

double Jacobian::lattice_distance(const Eigen::VectorXcd& z) const {
    return reduce(z).cwiseAbs().maxCoeff();
}

JacobianPoint Jacobian::with_characteristics(const Eigen::VectorXcd& z) const {
    const double den = 2.0 * S_.N();
    auto [a, b] = coordinates(z);
    Eigen::VectorXd ra = (a * den).array().round().matrix() / den;
    Eigen::VectorXd rb = (b * den).array().round().matrix() / den;
    JacobianPoint out;
    out.char_residual = (z - P_.tau * ra.cast<cplx>() - rb.cast<cplx>()).cwiseAbs().maxCoeff();
    // representatives in [-1/2, 1/2)
    for (int k = 0; k < ra.size(); ++k) {
        ra[k] -= std::floor(ra[k] + 0.5);
        rb[k] -= std::floor(rb[k] + 0.5);
        ra[k] = std::round(ra[k] * den) / den;
        rb[k] = std::round(rb[k] * den) / den;
    }
    out.z = P_.tau * ra.cast<cplx>() + rb.cast<cplx>();
    out.char_a = ra;
    out.char_b = rb;
    return out;
}

double theta_modulus(const Eigen::VectorXcd& z, const Eigen::MatrixXcd& tau, double tol) {
    const Eigen::MatrixXd Y = tau.imag();
    const Eigen::VectorXd y = z.imag();
    return std::abs(theta(z, tau, tol).value) * std::exp(-kPi * y.dot(Y.ldlt().solve(y)));
}

std::vector<Place> random_places(const Surface& S, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const double scale = branch_scale(S.spec()), sep = min_branch_separation(S.spec());
    cplx c = 0.0;
    for (const cplx& l : S.spec().lambda) c += l;
    c /= static_cast<double>(S.m());
    std::vector<Place> out;
    while (static_cast<int>(out.size()) < count) {
        const cplx x = c + 0.8 * scale * cplx(U(rng), U(rng));
        const int sheet = static_cast<int>(rng() % static_cast<std::uint64_t>(S.N()));
        if (S.branch_distance(x) < 0.2 * sep) continue;
        out.push_back(Place::regular(x, sheet));
    }
    return out;
}

RiemannConstant riemann_constant(const Jacobian& J, std::uint64_t seed, int draws) {
    const Surface& S = J.surface();
    const int g = S.genus(), N = S.N();
    const auto& tau = J.periods().tau;
    Eigen::VectorXcd u_div = Eigen::VectorXcd::Zero(g);
    for (int i = 0; i < S.m(); ++i) u_div += static_cast<double>(N - 1) * J.abel(Place::branch_point(i));
    for (int s = 0; s < N; ++s) u_div -= 2.0 * J.abel(Place::infinity(s));
    const Eigen::VectorXcd K0 = -0.5 * u_div;

    std::vector<Eigen::VectorXcd> uD;
    const auto places = random_places(S, draws * std::max(0, g - 1), seed);
    for (int d = 0; d < draws; ++d) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(g);
        for (int k = 0; k < g - 1; ++k) v += J.abel(places[d * (g - 1) + k]);
        uD.push_back(v);
    }
    RiemannConstant out;
    out.scale = theta_scale(tau, seed);
    std::vector<std::pair<double, std::uint32_t>> scores;
    for (std::uint32_t mask = 0; mask < (1u << (2 * g)); ++mask) {
        Eigen::VectorXd ha(g), hb(g);
        for (int k = 0; k < g; ++k) {
            ha[k] = (mask >> k) & 1u ? 0.5 : 0.0;
            hb[k] = (mask >> (g + k)) & 1u ? 0.5 : 0.0;
        }
        const Eigen::VectorXcd K = K0 + tau * ha.cast<cplx>() + hb.cast<cplx>();
        double worst = 0.0;
        for (const auto& v : uD) worst = std::max(worst, theta_modulus(J.reduce(v + K), tau));
        scores.emplace_back(worst / out.scale, mask);
    }
    std::stable_sort(scores.begin(), scores.end());
    const std::uint32_t mask = scores[0].second;
    out.half_a.resize(g);
    out.half_b.resize(g);
    for (int k = 0; k < g; ++k) {
        out.half_a[k] = (mask >> k) & 1u ? 0.5 : 0.0;
        out.half_b[k] = (mask >> (g + k)) & 1u ? 0.5 : 0.0;
    }
    out.K = K0 + tau * out.half_a.cast<cplx>() + out.half_b.cast<cplx>();
    out.best_residual = scores[0].first;
    out.second_residual = scores.size() > 1 ? scores[1].first : std::numeric_limits<double>::infinity();
    if (out.best_residual > 1e-6 || out.second_residual < 10.0 * out.best_residual)
        throw NumericalError("half-period search for the Riemann constant is inconclusive");
    return out;
}

JacobianPoint divisor_point(const Jacobian& J, const RiemannConstant& K, const std::vector<int>& beta) {
    const Surface& S = J.surface();
    const auto profile = tau_profile(S.spec(), beta);
    Eigen::VectorXcd e = K.K;
    for (int i = 0; i < S.m(); ++i)
        if (beta[i] != 0) e += static_cast<double>(beta[i]) * J.abel(Place::branch_point(i));
    const int coef = profile.tau[0] - 1;
    if (coef != 0)
        for (int s = 0; s < S.N(); ++s) e += static_cast<double>(coef) * J.abel(Place::infinity(s));
    auto out = J.with_characteristics(e);
    if (out.char_residual > 1e-6) throw NumericalError("theta argument is not a 2N-torsion point");
    return out;
}

}  // namespace cyclic
