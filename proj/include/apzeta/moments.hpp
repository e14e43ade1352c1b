#pragma once

#include <complex>
#include <string>
#include <vector>

#include "apzeta/diophantine.hpp"
#include "apzeta/divisor.hpp"

namespace apzeta {

struct GridPolicy {
    int threads = 0;           // 0: hardware concurrency
    std::uint64_t chunk = 4096;  // fixed chunking; results identical for any thread count
};

enum class KeySumForm {
    refined,  // e^{(pi + 2 pi i b)k/a} weights, dyadic window (T/2pi, T/pi) e^{-2pi k/a}
    intro,    // e^{pi k/a} weights, full window m < T e^{-2pi k/a}
};

struct MomentRequest {
    ProgressionSpec spec;
    double T = 0;
    GridPolicy grid;
    KeySumForm key_form = KeySumForm::refined;
};

// sum over integers n >= 0 with 0 < a n + b <= T of |zeta(1/2 + i(an+b))|^2.
double discrete_moment(const MomentRequest& req);

// (T/a) log T, or with the full constant (T/a)(log T + 2 gamma - 1 - log 2pi).
double main_term_thm1(double a, double T, bool leading_only);

// 1 + delta = (rs - 1) / (rs + 1 - 2 sqrt(rs) cos(b log(r/s)))
struct DeltaFactor {
    std::int64_t r, s;
    double b;
    double factor_1_plus_delta;
    double delta;
};
DeltaFactor delta_factor(std::int64_t r, std::int64_t s, double b);

// Rational-spacing prediction; for k0 = 1 includes the secondary main term
// -delta * sqrt(rs) log(rs) / (sqrt(rs) - 1) * (T/a).
double main_term_thm2(const ProgressionSpec& spec, double T);

// sum_{1 <= k < (a/2pi) log(T/pi)} weight(k) sum_m d(m) e(-e^{2pi k/a} m).
// Rational-power spacings route k0 | k terms through exact rational phases.
std::complex<double> key_sum(const ProgressionSpec& spec, double T, const DivisorTable& table,
                             KeySumForm form = KeySumForm::refined);

struct MomentReport {
    double T = 0;
    double a = 0;
    double b = 0;
    std::string form;
    double empirical = 0;
    double predicted_leading = 0;
    double predicted_full = 0;
    double ratio_leading = 0;
    double ratio_full = 0;
    std::complex<double> key_sum_value;
    double key_sum_over_tlogt = 0;
    std::vector<std::pair<std::string, double>> diagnostics;
};

MomentReport moment_report(const MomentRequest& req, const DivisorTable& table);

}  // namespace apzeta
