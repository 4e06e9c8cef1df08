#include "cyclic/curve.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cyclic {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

int inverse_mod(int a, int N) {
    a = reduce(a, N);
    for (int x = 1; x < N; ++x)
        if (reduce(static_cast<std::int64_t>(a) * x, N) == 1) return x;
    throw InvalidInput("no inverse of " + std::to_string(a) + " modulo " + std::to_string(N));
}

int differential_count(const CurveSpec& spec, int l) {
    int s = 0;
    for (int Ri : spec.R) s += reduce(static_cast<std::int64_t>(l) * Ri, spec.N);
    // s is divisible by N whenever sum R_i = 0 mod N
    return s / spec.N - 1;
}

RamificationData validate_curve(const CurveSpec& spec) {
    const int N = spec.N;
    if (!is_prime(N)) throw InvalidInput("N must be prime, got " + std::to_string(N));
    if (spec.m() < 1) throw InvalidInput("R must be non-empty");
    if (spec.lambda.size() != spec.R.size())
        throw InvalidInput("lambda and R must have the same length");
    std::int64_t total = 0;
    for (int Ri : spec.R) {
        if (Ri < 1 || Ri > N - 1)
            throw InvalidInput("each R_i must lie in 1..N-1, got " + std::to_string(Ri));
        if (std::gcd(Ri, N) != 1) throw InvalidInput("gcd(R_i, N) must be 1");
        total += Ri;
    }
    if (total % N != 0) throw InvalidInput("sum of R must be divisible by N");
    for (std::size_t i = 0; i < spec.lambda.size(); ++i) {
        const cplx li = spec.lambda[i];
        if (!std::isfinite(li.real()) || !std::isfinite(li.imag()))
            throw InvalidInput("branch point lambda_" + std::to_string(i + 1) + " must be finite");
        for (std::size_t j = 0; j < i; ++j)
            if (li == spec.lambda[j]) throw InvalidInput("branch points must be distinct");
        if (li == spec.base_x) throw InvalidInput("base_x must differ from every branch point");
    }
    if (!std::isfinite(spec.base_x.real()) || !std::isfinite(spec.base_x.imag()))
        throw InvalidInput("base_x must be finite");

    RamificationData out;
    out.r = spec.m() * (N - 1);
    if (out.r % 2 != 0) throw InvalidInput("total ramification must be even");
    if (spec.m() < 2) throw InvalidInput("at least two branch points are required");
    out.g = (N - 1) * (spec.m() - 2) / 2;
    out.d.assign(N, 0);
    int dsum = 0;
    for (int l = 1; l < N; ++l) {
        out.d[l] = differential_count(spec, l);
        dsum += out.d[l];
    }
    if (dsum != out.g) throw NumericalError("differential count does not match genus");
    for (int Ri : spec.R) ++out.t[Ri];
    return out;
}

namespace {
Rational frac(std::int64_t a, int N) { return Rational(reduce(a, N), N); }
}  // namespace

Rational gamma_exponent(const CurveSpec& spec, int i, int j) {
    Rational s(0);
    for (int w = 0; w < spec.N; ++w)
        s += frac(static_cast<std::int64_t>(w) * spec.R[i], spec.N) *
             frac(static_cast<std::int64_t>(w) * spec.R[j], spec.N);
    return s;
}

Rational q_exponent(const CurveSpec& spec, const std::vector<int>& beta, int i, int j) {
    Rational s(0);
    for (int k = 0; k < spec.N; ++k)
        s += frac(beta[i] + static_cast<std::int64_t>(k) * spec.R[i], spec.N) *
             frac(beta[j] + static_cast<std::int64_t>(k) * spec.R[j], spec.N);
    return s;
}

std::vector<int> canonical_order(const CurveSpec& spec) {
    std::vector<int> idx(spec.lambda.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const cplx la = spec.lambda[a], lb = spec.lambda[b];
        if (la.real() != lb.real()) return la.real() < lb.real();
        return la.imag() < lb.imag();
    });
    return idx;
}

double min_branch_separation(const CurveSpec& spec) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < spec.lambda.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            best = std::min(best, std::abs(spec.lambda[i] - spec.lambda[j]));
    return best;
}

double branch_scale(const CurveSpec& spec) {
    double best = 1e-300;
    for (std::size_t i = 0; i < spec.lambda.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            best = std::max(best, std::abs(spec.lambda[i] - spec.lambda[j]));
    return best;
}

std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q.numerator() << '/' << q.denominator();
    return os.str();
}

}  // namespace cyclic
