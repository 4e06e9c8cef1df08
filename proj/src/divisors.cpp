#include "cyclic/divisors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cyclic {

bool BetaVector::admissible() const {
    return std::all_of(tau.begin(), tau.end(), [](int t) { return t == 0; });
}

std::vector<int> residue_sums(const CurveSpec& spec, const std::vector<int>& beta) {
    std::vector<int> sums(spec.N, 0);
    for (int k = 0; k < spec.N; ++k)
        for (int i = 0; i < spec.m(); ++i)
            sums[k] += reduce(beta[i] + static_cast<std::int64_t>(k) * spec.R[i], spec.N);
    return sums;
}

namespace {

void check_beta_shape(const CurveSpec& spec, const std::vector<int>& beta) {
    if (static_cast<int>(beta.size()) != spec.m())
        throw InvalidInput("beta must have one entry per branch point");
    for (int b : beta)
        if (b < 0 || b >= spec.N) throw InvalidInput("beta entries must lie in 0..N-1");
}

void check_search_size(const CurveSpec& spec) {
    if (spec.m() * std::log2(static_cast<double>(spec.N)) > 30.0)
        throw InvalidInput("search space N^m exceeds 2^30; refusing exhaustive enumeration");
}

// Depth-first search over {0..N-1}^m keeping the running residue sums; prunes
// when some k can no longer reach r/2.
void search(const CurveSpec& spec, int half_r, bool all_congruent,
            const std::function<void(const std::vector<int>&)>& emit) {
    const int N = spec.N, m = spec.m();
    std::vector<int> beta(m, 0);
    std::vector<int> sums(N, 0);
    std::function<void(int)> rec = [&](int pos) {
        const int remaining = m - pos;
        if (!all_congruent) {
            for (int k = 0; k < N; ++k)
                if (sums[k] > half_r || sums[k] + (N - 1) * remaining < half_r) return;
        }
        if (pos == m) {
            emit(beta);
            return;
        }
        for (int b = 0; b < N; ++b) {
            beta[pos] = b;
            for (int k = 0; k < N; ++k)
                sums[k] += reduce(b + static_cast<std::int64_t>(k) * spec.R[pos], N);
            rec(pos + 1);
            for (int k = 0; k < N; ++k)
                sums[k] -= reduce(b + static_cast<std::int64_t>(k) * spec.R[pos], N);
        }
    };
    rec(0);
}

}  // namespace

BetaVector tau_profile(const CurveSpec& spec, const std::vector<int>& beta) {
    const auto ram = validate_curve(spec);
    check_beta_shape(spec, beta);
    const int half_r = ram.r / 2;
    const auto sums = residue_sums(spec, beta);
    if (reduce(sums[0] - half_r, spec.N) != 0)
        throw InvalidInput("congruence violated: sum beta_i - r/2 must be divisible by N");
    BetaVector out;
    out.beta = beta;
    out.tau.resize(spec.N);
    for (int k = 0; k < spec.N; ++k) {
        const int diff = half_r - sums[k];
        if (diff % spec.N != 0) throw NumericalError("tau_k is not an integer");
        out.tau[k] = diff / spec.N;
        out.order += std::max(0, out.tau[k]);
    }
    return out;
}

std::vector<BetaVector> enumerate_admissible(const CurveSpec& spec) {
    const auto ram = validate_curve(spec);
    check_search_size(spec);
    std::vector<BetaVector> out;
    search(spec, ram.r / 2, false, [&](const std::vector<int>& b) {
        BetaVector v;
        v.beta = b;
        v.tau.assign(spec.N, 0);
        out.push_back(std::move(v));
    });
    // the search visits vectors in lexicographic order already
    return out;
}

std::vector<BetaVector> enumerate_congruent(const CurveSpec& spec) {
    const auto ram = validate_curve(spec);
    check_search_size(spec);
    std::vector<BetaVector> out;
    search(spec, ram.r / 2, true, [&](const std::vector<int>& b) {
        int s = 0;
        for (int x : b) s += x;
        if (reduce(s - ram.r / 2, spec.N) == 0) out.push_back(tau_profile(spec, b));
    });
    return out;
}

bool nonsingular_rule(const CurveSpec& spec, const std::vector<int>& beta) {
    if (std::any_of(spec.R.begin(), spec.R.end(), [](int r) { return r != 1; }))
        throw InvalidInput("nonsingular_rule requires R_i = 1 for every i");
    if (spec.m() % spec.N != 0) throw InvalidInput("nonsingular_rule requires N | m");
    check_beta_shape(spec, beta);
    std::vector<int> count(spec.N, 0);
    for (int b : beta) ++count[b];
    const int p = spec.m() / spec.N;
    return std::all_of(count.begin(), count.end(), [p](int c) { return c == p; });
}

EquivalenceShift equivalence_shift(const CurveSpec& spec, const std::vector<int>& beta, int k) {
    if (k < 0 || k >= spec.N) throw InvalidInput("shift k must lie in 0..N-1");
    check_beta_shape(spec, beta);
    EquivalenceShift out;
    for (int i = 0; i < spec.m(); ++i) {
        const std::int64_t v = beta[i] + static_cast<std::int64_t>(k) * spec.R[i];
        const int e = reduce(v, spec.N);
        out.beta.push_back(e);
        out.h.push_back(static_cast<int>((v - e) / spec.N));
    }
    return out;
}

std::vector<int> negate(const CurveSpec& spec, const std::vector<int>& beta) {
    check_beta_shape(spec, beta);
    std::vector<int> out(beta.size());
    std::transform(beta.begin(), beta.end(), out.begin(),
                   [&](int b) { return spec.N - 1 - b; });
    return out;
}

}  // namespace cyclic
