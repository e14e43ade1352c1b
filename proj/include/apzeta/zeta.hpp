#pragma once

#include <complex>

#include "apzeta/divisor.hpp"

namespace apzeta {

enum class ZetaMethod { riemann_siegel, euler_maclaurin };

struct CriticalPoint {
    double t;
    double zeta_abs_sq;  // |zeta(1/2 + it)|^2
    ZetaMethod method;
};

// |zeta(1/2+it)|^2. Dispatches to Riemann-Siegel (with correction terms
// C_0..C_8) for t >= 30 and Euler-Maclaurin below. Absolute error <= 1e-6
// for t <= 1e8; the dominant contribution is the Riemann-Siegel remainder,
// < 2e-9 in Z for t >= 30 and falling like t^(-19/4).
CriticalPoint zeta_half_line(double t);
CriticalPoint zeta_half_line(double t, ZetaMethod method);

// zeta(1/2 + it) as a complex value, by the chosen method.
std::complex<double> zeta_on_line(double t, ZetaMethod method);

// theta(t) = arg Gamma(1/4 + it/2) - (t/2) log pi, by the standard
// asymptotic series; t >= 1.
double riemann_siegel_theta(double t);

// chi(s) from the functional equation zeta(s) = chi(s) zeta(1-s), evaluated
// as pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2). Throws std::domain_error at the
// poles (odd positive integers on the real axis).
std::complex<double> chi_factor(std::complex<double> s);

// log Gamma(z) by Stirling with recurrence shifts; principal branch pieces
// composed additively (imaginary part is not continuity-corrected across
// shifts, which the chi quotient does not need).
std::complex<double> log_gamma(std::complex<double> z);

// zeta(s)^2 = main_sum + chi(s)^2 * mirrored_sum + residual at s = 1/2+it,
// both sums over n <= t/2pi with divisor coefficients.
struct AfeDecomposition {
    double t;
    std::complex<double> main_sum;
    std::complex<double> mirrored_sum;
    std::complex<double> residual;
};
AfeDecomposition afe_decompose(double t, const DivisorTable& table);

struct QuadratureSpec {
    double step = 0;  // 0: default, min(pi/(2 log T), 0.1)
};

struct MeanSquare {
    double T;
    double integral;    // int_0^T |zeta(1/2+it)|^2 dt by composite Simpson
    double main_term;   // T log T + (2 gamma - 1 - log 2pi) T
    double error_term;  // integral - main_term, the E(T) diagnostic
};
MeanSquare continuous_mean_square(double T, QuadratureSpec spec = {});

}  // namespace apzeta
