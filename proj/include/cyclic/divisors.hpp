#pragma once

// Divisors supported on the ramification points: tau-profiles, theta
// vanishing orders and the admissible (non-vanishing) coefficient vectors.

#include <utility>
#include <vector>

#include "cyclic/curve.hpp"

namespace cyclic {

struct BetaVector {
    std::vector<int> beta;
    std::vector<int> tau;  // tau_0 .. tau_{N-1}
    int order = 0;         // sum_k max(0, tau_k)

    bool admissible() const;
    friend bool operator==(const BetaVector&, const BetaVector&) = default;
};

/// Residue sums sum_i reduce(beta_i + k R_i) for k = 0..N-1.
std::vector<int> residue_sums(const CurveSpec& spec, const std::vector<int>& beta);

/// Requires each beta_i in 0..N-1 and sum beta_i = r/2 (mod N).
BetaVector tau_profile(const CurveSpec& spec, const std::vector<int>& beta);

/// All beta in {0..N-1}^m with an identically zero tau-profile, sorted
/// lexicographically. Refuses search spaces larger than 2^30.
std::vector<BetaVector> enumerate_admissible(const CurveSpec& spec);

/// Every beta satisfying the congruence, with its profile (same size limit).
std::vector<BetaVector> enumerate_congruent(const CurveSpec& spec);

/// Counting rule for unramified-type exponents (all R_i = 1): each residue
/// 0..N-1 appears exactly m/N times.
bool nonsingular_rule(const CurveSpec& spec, const std::vector<int>& beta);

struct EquivalenceShift {
    std::vector<int> beta;  // E_i = reduce(beta_i + k R_i)
    std::vector<int> h;     // (beta_i + k R_i - E_i) / N
};

/// Linearly equivalent representative: the divisor of
/// y^{-k} prod (x - lambda_i)^{h_i} is sum (beta_i - E_i) P_i.
EquivalenceShift equivalence_shift(const CurveSpec& spec, const std::vector<int>& beta, int k);

/// beta_i -> N - 1 - beta_i, realising -e_beta.
std::vector<int> negate(const CurveSpec& spec, const std::vector<int>& beta);

}  // namespace cyclic
