#pragma once

// The N-sheeted Riemann surface of a cyclic cover: points carry continuous
// logarithms of every factor (x - lambda_i), which fixes all fractional
// powers along a path without root matching.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cyclic/curve.hpp"

namespace cyclic {

/// A regular point of the surface. logs[i] is a branch of log(x - lambda_i);
/// the sheet is read off from the winding integers of these branches.
struct SurfacePoint {
    cplx x;
    std::vector<cplx> logs;
};

struct Place {
    enum class Kind { Regular, Branch, Infinity };
    Kind kind = Kind::Regular;
    cplx x{};        // Regular
    int sheet = 0;   // Regular, Infinity
    int branch = 0;  // Branch (0-based index into lambda)

    static Place regular(cplx x, int sheet) { return {Kind::Regular, x, sheet, 0}; }
    static Place branch_point(int i) { return {Kind::Branch, {}, 0, i}; }
    static Place infinity(int sheet) { return {Kind::Infinity, {}, sheet, 0}; }
};

/// Holomorphic differential z^{j-1} dz / s_l(z), 1 <= j <= d(l).
struct DifferentialIndex {
    int l;
    int j;
};

/// Polyline on the surface. The final segment may run into a branch point
/// (regularised with t = (x - lambda)^{1/N}) or out to infinity along a ray.
struct SurfacePath {
    enum class Terminal { None, Branch, Infinity };
    SurfacePoint start;
    std::vector<cplx> vertices;  // vertices[0] == start.x
    Terminal terminal = Terminal::None;
    int terminal_branch = 0;
    cplx ray_center{};           // Infinity terminal: ray from ray_center through the last vertex
};

/// Quadrature nodes along a path: the integral of f(x) dx is sum f(points[q]) * weights[q].
struct PathNodes {
    std::vector<SurfacePoint> points;
    std::vector<cplx> weights;
};

class Surface {
public:
    explicit Surface(CurveSpec spec);

    const CurveSpec& spec() const { return spec_; }
    const RamificationData& ramification() const { return ram_; }
    int N() const { return spec_.N; }
    int m() const { return spec_.m(); }
    int genus() const { return ram_.g; }
    const std::vector<DifferentialIndex>& basis() const { return basis_; }

    /// Exponent reduce(l R_i)/N of (x - lambda_i) in s_l.
    double s_exponent(int l, int i) const { return s_exp_[l][i]; }

    /// Point above x with principal logarithms, shifted to the requested sheet.
    SurfacePoint point(cplx x, int sheet) const;
    int sheet(const SurfacePoint& p) const;
    /// Analytic continuation along the straight segment p.x -> x.
    SurfacePoint continue_to(const SurfacePoint& p, cplx x) const;
    /// Same point moved to another sheet (deck transformation T^shift).
    SurfacePoint deck(const SurfacePoint& p, int shift) const;

    cplx y(const SurfacePoint& p) const;
    cplx s(const SurfacePoint& p, int l) const;
    /// Coefficient of dx of basis differential `index` at p.
    cplx differential(const SurfacePoint& p, int index) const;
    Eigen::VectorXcd differentials(const SurfacePoint& p) const;

    /// Point at local parameter t near branch i, t-branch and the other
    /// factors' branches fixed by the reference point `ref` (which lies near lambda_i).
    SurfacePoint local_point(int i, cplx t, const SurfacePoint& ref) const;
    /// Local parameter of a point near branch i: t = exp(log(x - lambda_i)/N).
    cplx local_parameter(int i, const SurfacePoint& p) const;

    /// Coefficients c_0..c_{n-1} of basis differential `index` = (sum c_a t^a) dt
    /// at P_i, branches fixed by `ref` as in local_point.
    std::vector<cplx> local_expansion(int index, int i, int n_terms, const SurfacePoint& ref) const;

    /// Distance from x to the nearest branch point.
    double branch_distance(cplx x) const;
    /// Distance from the segment [a, b] to the nearest branch point other than `skip`.
    double segment_clearance(cplx a, cplx b, int skip = -1) const;

    /// Sheet reached after continuing along the polyline (clearance enforced).
    int continue_sheet(const SurfacePath& path) const;
    SurfacePoint endpoint(const SurfacePath& path) const;

    /// Quadrature nodes of the path; pieces are at most max_piece long and
    /// at most half their distance to the nearest branch point or `avoid` point
    /// (poles of the integrand off the branch locus).
    PathNodes discretize(const SurfacePath& path, int order, double max_piece,
                         const std::vector<cplx>& avoid = {}) const;

private:
    CurveSpec spec_;
    RamificationData ram_;
    std::vector<DifferentialIndex> basis_;
    std::vector<std::vector<double>> s_exp_;
    int r0_inverse_ = 1;
};

/// Minimum distance from point p to segment [a, b].
double point_segment_distance(cplx p, cplx a, cplx b);

}  // namespace cyclic
