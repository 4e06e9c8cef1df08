#pragma once

// Cyclic covers y^N = prod (x - lambda_i)^{R_i} of the projective line and the
// exact combinatorics attached to them.

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace cyclic {

using cplx = std::complex<double>;
using Rational = boost::rational<std::int64_t>;

/// Raised for malformed curve descriptions and other invalid inputs.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure cannot meet its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CurveSpec {
    int N = 2;
    std::vector<int> R;
    std::vector<cplx> lambda;
    cplx base_x{0.0, 0.0};

    int m() const { return static_cast<int>(R.size()); }
};

struct RamificationData {
    int r = 0;  // total ramification m(N-1)
    int g = 0;  // genus
    std::vector<int> d;         // d[l] for l = 0..N-1 (d[0] unused, = 0)
    std::map<int, int> t;       // t[j] = #{i : R_i = j}
};

/// Representative of j mod N in {0, .., N-1}.
constexpr int reduce(std::int64_t j, int N) {
    const auto r = j % N;
    return static_cast<int>(r < 0 ? r + N : r);
}

bool is_prime(int n);

/// Modular inverse of a modulo prime N (a not divisible by N).
int inverse_mod(int a, int N);

/// Checks every curve invariant and returns the ramification tables.
/// Throws InvalidInput naming the violated condition.
RamificationData validate_curve(const CurveSpec& spec);

/// d(l) = sum_i reduce(l R_i)/N - 1, the number of basis differentials with
/// denominator s_l.
int differential_count(const CurveSpec& spec, int l);

/// gamma_ij = sum_w {w R_i / N}{w R_j / N}; indices are 0-based.
Rational gamma_exponent(const CurveSpec& spec, int i, int j);

/// q(beta_i, beta_j) = sum_k {(beta_i + k R_i)/N}{(beta_j + k R_j)/N}.
Rational q_exponent(const CurveSpec& spec, const std::vector<int>& beta, int i, int j);

/// Branch points sorted by real part, ties broken by imaginary part.
/// Returns the permutation (sorted position -> original index).
std::vector<int> canonical_order(const CurveSpec& spec);

/// Smallest pairwise distance between branch points.
double min_branch_separation(const CurveSpec& spec);

/// Characteristic length of the configuration (max |lambda_i - lambda_j|, at least 1e-300).
double branch_scale(const CurveSpec& spec);

std::string to_string(const Rational& q);

}  // namespace cyclic
