#pragma once

#include <complex>
#include <cstdint>

#include "apzeta/divisor.hpp"
#include "apzeta/real.hpp"

namespace apzeta {

enum class ExpSumAlgorithm { direct, hyperbola, rational_closed_form };

struct ExpSumResult {
    std::uint64_t M;
    double alpha;
    std::complex<double> value;  // sum_{m<=M} d(m) e(alpha m)
    ExpSumAlgorithm algorithm;
    double accuracy;  // certified absolute error bound
};

// sum_{n1 < n <= n2} e(alpha n), closed form with the integer-alpha branch
// returning n2 - n1 exactly.
std::complex<double> geometric_sum(double alpha, std::int64_t n1, std::int64_t n2);

ExpSumResult divisor_expsum_direct(const DivisorTable& table, std::uint64_t M, double alpha);
ExpSumResult divisor_expsum_direct(const DivisorTable& table, std::uint64_t M, const Real& alpha);

// Hyperbola method: 2 sum_{u<=sqrt(M)} sum_{u<v<=M/u} e(alpha uv)
// + sum_{u<=sqrt(M)} e(alpha u^2). Needs no divisor table; O(sqrt(M))
// geometric evaluations.
ExpSumResult divisor_expsum_hyperbola(std::uint64_t M, double alpha);
ExpSumResult divisor_expsum_hyperbola(std::uint64_t M, const Real& alpha);

// sum_{m<=x} d(m) e(m r/s) for gcd(r,s)=1, bucketed by residue class mod s so
// every phase is an exact root of unity, against the closed-form prediction
// (x/s)(log x + 2 gamma - 1 - 2 log s).
struct RationalExpSum {
    std::complex<double> value;
    double predicted_main;
    double residual;  // |value - predicted_main|
};
RationalExpSum divisor_expsum_rational(const DivisorTable& table, double x, std::int64_t r,
                                       std::int64_t s);

// A partial-window variant used by the key-sum machinery: the same grouped
// evaluation over lo < m <= hi.
std::complex<double> divisor_expsum_rational_window(const DivisorTable& table, std::uint64_t lo,
                                                    std::uint64_t hi, std::int64_t r,
                                                    std::int64_t s);

}  // namespace apzeta
