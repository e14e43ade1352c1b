#include "apzeta/zeta.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "apzeta/numerics.hpp"
#include "apzeta/real.hpp"

namespace apzeta {

#include "rs_tables.inc"

namespace {

// ---------------------------------------------------------------------------
// Shared double-double table of log(n)/(2pi), filled lazily from MPFR.
// Readers below the published fill mark need no lock.

constexpr std::size_t kLogCacheCap = 1u << 16;
std::array<DD, kLogCacheCap + 1>& log_cache() {
    static auto* arr = new std::array<DD, kLogCacheCap + 1>();
    return *arr;
}
std::atomic<std::size_t> g_log_filled{1};
std::mutex g_log_mu;

DD log_over_2pi(std::uint64_t n) {
    Real v = Real::log(Real(static_cast<unsigned long>(n), 160)) / (Real::pi(160) * 2L);
    return dd_from_real(v);
}

const DD* logs_up_to(std::size_t n) {
    if (n > kLogCacheCap) return nullptr;
    if (g_log_filled.load(std::memory_order_acquire) > n) return log_cache().data();
    std::lock_guard<std::mutex> lock(g_log_mu);
    std::size_t have = g_log_filled.load(std::memory_order_relaxed);
    for (std::size_t m = have; m <= n; ++m) log_cache()[m] = log_over_2pi(m);
    g_log_filled.store(n + 1, std::memory_order_release);
    return log_cache().data();
}

struct ThetaConsts {
    DD pi_over_8;
    DD inv_2pi;
};
const ThetaConsts& theta_consts() {
    static ThetaConsts c = [] {
        ThetaConsts r;
        r.pi_over_8 = dd_from_real(Real::pi(160) / 8L);
        r.inv_2pi = dd_from_real(1L / (Real::pi(160) * 2L));
        return r;
    }();
    return c;
}

// theta(t)/(2pi) in double-double, for exact phase reduction
DD theta_over_2pi(double t) {
    DD l = dd_from_real(Real::log(Real(t, 160) / (Real::pi(160) * 2L)));
    DD th = dd_mul(l, 0.5 * t);
    th = dd_add(th, -0.5 * t);
    th = dd_sub(th, theta_consts().pi_over_8);
    double t2 = t * t;
    double tail = (1.0 / 48.0) / t + (7.0 / 5760.0) / (t * t2) + (31.0 / 80640.0) / (t * t2 * t2);
    th = dd_add(th, tail);
    return dd_mul(th, theta_consts().inv_2pi);
}

double cheb_eval(const double* c, int len, double u) {
    double b0 = 0, b1 = 0;
    for (int k = len - 1; k >= 1; --k) {
        double tmp = 2 * u * b0 - b1 + c[k];
        b1 = b0;
        b0 = tmp;
    }
    return u * b0 - b1 + c[0];
}

double rs_correction(double p, double inv_sqrt_x) {
    double u = 2 * p - 1;
    if (u < -1) u = -1;
    if (u > 1) u = 1;
    double corr = 0, xp = 1;
    for (int j = 0; j < 9; ++j) {
        corr += cheb_eval(kRsCheb[j], kRsChebLen[j], u) * xp;
        xp *= inv_sqrt_x;
    }
    return corr;
}

// Hardy Z(t) by the Riemann-Siegel formula; also hands back theta/(2pi).
double hardy_z(double t, DD* theta2pi_out) {
    double x = t / (2 * M_PI);
    double a = std::sqrt(x);
    auto N = static_cast<std::uint64_t>(a);
    double p = a - static_cast<double>(N);

    DD th = theta_over_2pi(t);
    if (theta2pi_out) *theta2pi_out = th;

    const DD* logs = logs_up_to(N);
    Kahan sum;
    for (std::uint64_t n = 1; n <= N; ++n) {
        DD ln2pi = logs ? logs[n] : log_over_2pi(n);
        DD ph = dd_frac(dd_sub(th, dd_mul(ln2pi, t)));
        sum.add(std::cos(2 * M_PI * ph.hi + 2 * M_PI * ph.lo) / std::sqrt(static_cast<double>(n)));
    }
    double z = 2 * sum.value();
    double corr = rs_correction(p, 1.0 / a) * std::pow(x, -0.25);
    z += (N % 2 == 1) ? corr : -corr;  // (-1)^(N-1)
    return z;
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin: zeta(s) with s = 1/2 + it, workable for t up to ~several
// thousand (cost O(t)).

std::complex<double> em_zeta(double t) {
    std::complex<double> s{0.5, t};
    auto N = static_cast<std::uint64_t>(std::ceil(std::max(16.0, 1.5 * t)));
    Kahan re, im;
    for (std::uint64_t n = 1; n < N; ++n) {
        double lg = std::log(static_cast<double>(n));
        double amp = std::exp(-0.5 * lg);
        double ph = reduce_mod_one(-t * lg / (2 * M_PI)) * 2 * M_PI;
        re.add(amp * std::cos(ph));
        im.add(amp * std::sin(ph));
    }
    std::complex<double> acc{re.value(), im.value()};
    double Nd = static_cast<double>(N);
    std::complex<double> Npow = std::exp(-s * std::log(Nd));  // N^{-s}
    acc += Nd * Npow / (s - 1.0);                             // N^{1-s}/(s-1)
    acc += 0.5 * Npow;

    // Bernoulli tail: term_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    static const double bern[] = {1.0 / 6,        -1.0 / 30,       1.0 / 42,      -1.0 / 30,
                                  5.0 / 66,       -691.0 / 2730,   7.0 / 6,       -3617.0 / 510,
                                  43867.0 / 798,  -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730,
                                  8553103.0 / 6};
    std::complex<double> rising = s;            // s ... (s+2k-2), starts with k=1: just s
    std::complex<double> npow = Npow / Nd;      // N^{-s-1}
    double fact = 2;                            // (2k)!
    for (int k = 1; k <= 13; ++k) {
        std::complex<double> term = (bern[k - 1] / fact) * rising * npow;
        acc += term;
        if (std::abs(term) < 1e-18 * std::abs(acc)) break;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        npow /= Nd * Nd;
        fact *= (2 * k + 1) * (2 * k + 2);
    }
    return acc;
}

}  // namespace

double riemann_siegel_theta(double t) {
    if (!(t >= 1.0)) throw std::domain_error("riemann_siegel_theta: t must be >= 1");
    DD th = theta_over_2pi(t);
    return (th.hi + th.lo) * 2 * M_PI;
}

std::complex<double> zeta_on_line(double t, ZetaMethod method) {
    if (!(t > 0)) throw std::domain_error("zeta_on_line: t must be positive");
    if (method == ZetaMethod::euler_maclaurin) return em_zeta(t);
    DD th2pi{};
    double z = hardy_z(t, &th2pi);
    DD fr = dd_frac(th2pi);
    double ang = -2 * M_PI * fr.hi - 2 * M_PI * fr.lo;
    return z * std::complex<double>{std::cos(ang), std::sin(ang)};  // Z e^{-i theta}
}

CriticalPoint zeta_half_line(double t, ZetaMethod method) {
    if (!(t > 0)) throw std::domain_error("zeta_half_line: t must be positive");
    if (method == ZetaMethod::riemann_siegel) {
        double z = hardy_z(t, nullptr);
        return {t, z * z, method};
    }
    double a = std::abs(em_zeta(t));
    return {t, a * a, method};
}

CriticalPoint zeta_half_line(double t) {
    if (!(t > 0)) throw std::domain_error("zeta_half_line: t must be positive");
    return t < 30 ? zeta_half_line(t, ZetaMethod::euler_maclaurin)
                  : zeta_half_line(t, ZetaMethod::riemann_siegel);
}

// ---------------------------------------------------------------------------

std::complex<double> log_gamma(std::complex<double> z) {
    // shift until |z| is comfortably in the Stirling zone
    std::complex<double> shift{0, 0};
    int guard = 0;
    while (std::abs(z) < 24.0) {
        if (std::abs(z - std::round(z.real())) < 1e-13 && z.real() <= 0.0)
            throw std::domain_error("log_gamma: pole at nonpositive integer");
        shift += std::log(z);
        z += 1.0;
        if (++guard > 4096) throw std::domain_error("log_gamma: shift runaway");
    }
    static const double stirling[] = {
        // B_{2k} / (2k (2k-1))
        1.0 / 12,        -1.0 / 360,       1.0 / 1260,      -1.0 / 1680,     1.0 / 1188,
        -691.0 / 360360, 7.0 / 1092,       -3617.0 / 122400, 43867.0 / 244188,
    };
    std::complex<double> w = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * M_PI);
    std::complex<double> zinv = 1.0 / z, zp = zinv;
    for (double c : stirling) {
        w += c * zp;
        zp *= zinv * zinv;
    }
    return w - shift;
}

std::complex<double> chi_factor(std::complex<double> s) {
    // poles where Gamma((1-s)/2) blows up and 1/Gamma(s/2) does not cancel:
    // odd positive integers
    if (std::abs(s.imag()) < 1e-12) {
        double r = std::round(s.real());
        if (std::abs(s.real() - r) < 1e-12 && r >= 1 && std::fmod(r, 2.0) == 1.0)
            throw std::domain_error("chi_factor: pole at odd positive integer");
    }
    std::complex<double> lg = (s - 0.5) * std::log(M_PI) + log_gamma((1.0 - s) / 2.0) -
                              log_gamma(s / 2.0);
    return std::exp(lg);
}

AfeDecomposition afe_decompose(double t, const DivisorTable& table) {
    if (!(t >= 10)) throw std::domain_error("afe_decompose: t must be >= 10");
    double x = t / (2 * M_PI);
    if (x > static_cast<double>(table.limit()))
        throw std::out_of_range("afe_decompose: divisor table smaller than t/2pi");
    auto M = static_cast<std::uint64_t>(std::floor(x));

    const DD* logs = logs_up_to(M);
    Kahan re, im;
    for (std::uint64_t n = 1; n <= M; ++n) {
        DD ln2pi = logs ? logs[n] : log_over_2pi(n);
        DD ph = dd_frac(dd_mul(ln2pi, -t));  // phase of n^{-it}
        double amp = table.d(n) / std::sqrt(static_cast<double>(n));
        double ang = 2 * M_PI * ph.hi + 2 * M_PI * ph.lo;
        re.add(amp * std::cos(ang));
        im.add(amp * std::sin(ang));
    }
    std::complex<double> main{re.value(), im.value()};
    std::complex<double> mirror = std::conj(main);  // n^{-(1-s)} = conj(n^{-s}) on the line

    DD th2pi{};
    double z = hardy_z(t, &th2pi);
    DD fr = dd_frac(th2pi);
    double ang = -2 * M_PI * fr.hi - 2 * M_PI * fr.lo;
    std::complex<double> zeta_val = z * std::complex<double>{std::cos(ang), std::sin(ang)};
    std::complex<double> zeta_sq = zeta_val * zeta_val;
    std::complex<double> chi_sq = std::polar(1.0, 4.0 * ang);  // chi(s)^2 = e^{-4 i theta}

    AfeDecomposition out;
    out.t = t;
    out.main_sum = main;
    out.mirrored_sum = mirror;
    out.residual = zeta_sq - main - chi_sq * mirror;
    return out;
}

MeanSquare continuous_mean_square(double T, QuadratureSpec spec) {
    if (!(T >= 10)) throw std::domain_error("continuous_mean_square: T must be >= 10");
    double step = spec.step > 0 ? spec.step : std::min(M_PI / (2 * std::log(T)), 0.1);
    auto n = static_cast<std::uint64_t>(std::ceil(T / step));
    if (n % 2) ++n;
    double h = T / static_cast<double>(n);

    auto f = [](double t) {
        if (t <= 0) return std::norm(em_zeta(0.0));
        return zeta_half_line(t).zeta_abs_sq;
    };
    Kahan acc;
    acc.add(f(0.0));
    acc.add(f(T));
    for (std::uint64_t i = 1; i < n; ++i) acc.add((i % 2 ? 4.0 : 2.0) * f(h * static_cast<double>(i)));
    double integral = acc.value() * h / 3.0;

    int bits = default_precision_bits();
    const auto& cs = constants(bits);
    Real Tr(T, bits);
    Real main = Tr * Real::log(Tr) + Tr * (cs.gamma_euler * 2L - 1L - cs.log_2pi);
    MeanSquare out;
    out.T = T;
    out.integral = integral;
    out.main_term = main.to_double();
    out.error_term = integral - out.main_term;
    return out;
}

}  // namespace apzeta
