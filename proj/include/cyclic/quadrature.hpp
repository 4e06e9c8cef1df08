#pragma once

#include <vector>

namespace cyclic {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int order);
    int order() const { return static_cast<int>(nodes.size()); }
};

/// Cached rule for a given order (thread-safe, lives for the program).
const GaussLegendre& gauss_legendre(int order);

}  // namespace cyclic
