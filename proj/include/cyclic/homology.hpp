#pragma once

// Canonical homology basis built from lifted branch-point lassos. Each
// generator carries its own perturbed geometry so that intersection numbers
// can be read off from transversal crossings.

#include <cstdint>
#include <string>
#include <vector>

#include "cyclic/surface.hpp"

namespace cyclic {

/// One loop around a branch point: |turns| circuits, counterclockwise when positive.
struct LassoLeg {
    int branch = 0;
    int turns = 1;
    double radius = 0.0;
};

/// Closed cycle: lassos from a private base point, lifted from a start sheet.
/// Stems and circles are rebuilt from these parameters for any branch-point
/// position, so the cycle deforms continuously with lambda.
struct GeneratorCycle {
    cplx base;
    int sheet = 0;
    std::vector<LassoLeg> legs;
    std::string label;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct HomologyBasis {
    std::vector<GeneratorCycle> generators;
    IntMatrix generator_intersections;  // n x n, skew
    IntMatrix a;                        // g rows of generator coefficients
    IntMatrix b;
    IntMatrix intersection;             // 2g x 2g in the order a_1..a_g, b_1..b_g
    std::uint64_t seed = 0;
    int polygon_vertices = 12;
    double min_clearance = 0.0;  // clearance of the generator geometry when built

    int genus() const { return static_cast<int>(a.size()); }
};

/// Sheet shift s -> s + R_i of a counterclockwise loop around each branch point,
/// measured by continuation.
std::vector<int> monodromy_shifts(const Surface& surface);

/// Polyline of a generator at the surface's current branch points.
SurfacePath generator_path(const Surface& surface, const GeneratorCycle& cycle, int polygon_vertices);

/// Distance from the generator geometry to every branch point it does not encircle
/// (and, for circles, to the encircled one).
double generator_clearance(const Surface& surface, const GeneratorCycle& cycle, int polygon_vertices);

/// Intersection number of two closed cycles; throws NumericalError on
/// non-transversal configurations (shared vertices, overlapping segments).
std::int64_t intersection_number(const Surface& surface, const SurfacePath& A, const SurfacePath& B);

struct SymplecticReduction {
    IntMatrix transform;  // rows: a_1, b_1, a_2, b_2, ... as generator combinations
    std::vector<std::int64_t> invariants;  // block entries d_k
};

/// Integer skew normal form: rows of `transform` T satisfy T M T^t = blocks [[0, d], [-d, 0]] plus zeros.
SymplecticReduction skew_reduce(const IntMatrix& M);

/// Builds a canonical basis; retries with derived seeds on degenerate geometry.
HomologyBasis build_basis(const Surface& surface, std::uint64_t seed = 1);

/// Checks that the stored geometry still has clearance at the surface's
/// branch points; returns the clearance. Throws NumericalError otherwise.
double check_transport(const Surface& surface, const HomologyBasis& basis);

}  // namespace cyclic
