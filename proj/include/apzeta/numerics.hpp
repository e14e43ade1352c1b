#pragma once

#include <cmath>
#include <complex>

#include "apzeta/real.hpp"

namespace apzeta {

// e(x) := exp(2*pi*i*x). Arguments are reduced mod 1 before the trig call,
// so |result| = 1 to working accuracy for any finite x.
std::complex<double> e_of(double x);
ComplexReal e_of(const Real& x);

// x mod 1 in [0,1). For doubles this is exact (floor subtraction loses no
// bits); the _err variant also reports the ulp-model bound that applies when
// x itself approximates some alpha*m product.
double reduce_mod_one(double x);
Real reduce_mod_one(const Real& x);

struct Reduced {
    double value;  // x mod 1
    double err;    // 2^(1-significand bits) * |x|
};
Reduced reduce_mod_one_err(double x);
Reduced reduce_mod_one_err(const Real& x);

// ||x||: distance from x to the nearest integer, in [0, 1/2].
double dist_to_nearest_int(double x);

// ---------------------------------------------------------------------------
// Double-double helpers for phase accumulation. Only the handful of
// operations the exponential-sum and Riemann-Siegel kernels need.

struct DD {
    double hi = 0, lo = 0;
};

inline DD dd_two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    double e = (a - (s - v)) + (b - v);
    return {s, e};
}

inline DD dd_add(DD a, DD b) {
    DD s = dd_two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return dd_two_sum(s.hi, lo);
}

inline DD dd_add(DD a, double b) { return dd_add(a, DD{b, 0}); }

inline DD dd_two_prod(double a, double b) {
    double p = a * b;
    double e = std::fma(a, b, -p);
    return {p, e};
}

inline DD dd_mul(DD a, double b) {
    DD p = dd_two_prod(a.hi, b);
    p.lo += a.lo * b;
    return dd_two_sum(p.hi, p.lo);
}

inline DD dd_mul(DD a, DD b) {
    DD p = dd_two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return dd_two_sum(p.hi, p.lo);
}

inline DD dd_sub(DD a, DD b) { return dd_add(a, DD{-b.hi, -b.lo}); }

// fractional part in [0,1), exact on both limbs
inline DD dd_frac(DD a) {
    double f = std::floor(a.hi);
    DD r = dd_two_sum(a.hi - f, a.lo);  // a.hi - floor(a.hi) is exact
    double g = std::floor(r.hi);
    r = dd_two_sum(r.hi - g, r.lo);
    if (r.hi < 0) r = dd_add(r, DD{1.0, 0});
    if (r.hi >= 1.0) r = dd_add(r, DD{-1.0, 0});
    return r;
}

// Real -> double-double, exact to ~2^-106
DD dd_from_real(const Real& x);

// Compensated (Neumaier) accumulator; deterministic for a fixed add order.
struct Kahan {
    double sum = 0, c = 0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            c += (sum - t) + x;
        else
            c += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

}  // namespace apzeta
