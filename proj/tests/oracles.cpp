#include "oracles.hpp"

#include <gmpxx.h>

#include <cmath>
#include <vector>

#include "apzeta/numerics.hpp"

namespace apzeta::oracle {

namespace {

ComplexReal cmul(const ComplexReal& a, const ComplexReal& b) { return a * b; }

ComplexReal cdiv(const ComplexReal& a, const ComplexReal& b) {
    Real nrm = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / nrm, (a.im * b.re - a.re * b.im) / nrm};
}

// n^{-s} for s = sigma + i tau
ComplexReal npow_minus_s(unsigned long n, const Real& sigma, const Real& tau, int bits) {
    Real lnn = Real::log(Real(n, bits));
    Real amp = Real::exp(-(sigma * lnn));
    Real sn, cn;
    Real::sin_cos(-(tau * lnn), sn, cn);
    return {amp * cn, amp * sn};
}

// exact Bernoulli numbers via the defining recurrence
const std::vector<mpq_class>& bernoulli(std::size_t up_to) {
    static std::vector<mpq_class> cache{mpq_class(1)};
    while (cache.size() <= up_to) {
        std::size_t m = cache.size();
        mpq_class acc = 0;
        for (std::size_t j = 0; j < m; ++j) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m + 1),
                         static_cast<unsigned long>(j));
            acc += mpq_class(binom) * cache[j];
        }
        acc /= -static_cast<long>(m + 1);
        cache.push_back(acc);
    }
    return cache;
}

}  // namespace

ComplexReal zeta_em(double t, int bits) {
    const Real sigma(0.5, bits);
    const Real tau(t, bits);
    auto N = static_cast<unsigned long>(std::ceil(2.0 * std::max(std::abs(t), 10.0))) + 40;
    const int K = 30;
    const auto& bern = bernoulli(2 * K + 2);

    ComplexReal acc{Real(0.0, bits), Real(0.0, bits)};
    for (unsigned long n = 1; n < N; ++n) {
        ComplexReal term = npow_minus_s(n, sigma, tau, bits);
        acc.re = acc.re + term.re;
        acc.im = acc.im + term.im;
    }
    Real Nr(N, bits);
    ComplexReal Npow = npow_minus_s(N, sigma, tau, bits);  // N^{-s}
    // N^{1-s}/(s-1)
    ComplexReal num{Nr * Npow.re, Nr * Npow.im};
    ComplexReal den{sigma - 1L, tau};
    ComplexReal tail = cdiv(num, den);
    acc = acc + tail;
    acc.re = acc.re + Npow.re / 2L;
    acc.im = acc.im + Npow.im / 2L;

    // sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    ComplexReal rising{sigma, tau};
    ComplexReal npow = cdiv(Npow, ComplexReal{Nr, Real(0.0, bits)});  // N^{-s-1}
    mpz_class fact = 2;
    for (int k = 1; k <= K; ++k) {
        mpq_class coeff = bern[2 * static_cast<std::size_t>(k)] / mpq_class(fact);
        Real c(coeff, bits);
        ComplexReal term = cmul(rising, npow);
        acc.re = acc.re + c * term.re;
        acc.im = acc.im + c * term.im;
        ComplexReal f1{sigma + (2L * k - 1L), tau};
        ComplexReal f2{sigma + (2L * k), tau};
        rising = cmul(rising, cmul(f1, f2));
        npow = cdiv(npow, ComplexReal{Nr * Nr, Real(0.0, bits)});
        fact *= (2 * k + 1);
        fact *= (2 * k + 2);
    }
    return acc;
}

double zeta_abs_sq(double t, int bits) {
    ComplexReal z = zeta_em(t, bits);
    return (z.re * z.re + z.im * z.im).to_double();
}

std::uint32_t divisor_count(std::uint64_t n) {
    std::uint32_t c = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) c += (d * d == n) ? 1 : 2;
    }
    return c;
}

std::complex<double> key_sum_brute(const ProgressionSpec& spec, double T,
                                   const DivisorTable& table, KeySumForm form, int bits) {
    Real Tr(T, bits);
    Real a = spec.spacing(bits);
    Real pi = Real::pi(bits);
    Real bound = a / (pi * 2L) * Real::log(Tr / pi);
    long kmax = Real::floor(bound).to_long();
    if (Real(kmax, bits) == bound) kmax -= 1;

    std::complex<double> acc{0, 0};
    for (long k = 1; k <= kmax; ++k) {
        Real alpha = Real::exp(pi * 2L * k / a);
        Real lo_r(0.0, bits), hi_r(0.0, bits);
        if (form == KeySumForm::refined) {
            lo_r = Tr / (pi * 2L) / alpha;
            hi_r = Tr / pi / alpha;
        } else {
            hi_r = Tr / alpha;
        }
        // strict inequalities taken directly against the real endpoints
        std::complex<double> inner{0, 0};
        for (std::uint64_t m = 1;; ++m) {
            Real mr(static_cast<long>(m), bits);
            if (!(mr < hi_r)) break;
            if (!(mr > lo_r)) continue;
            ComplexReal ph = e_of(-(alpha * static_cast<long>(m)));
            double d = table.d(m);
            inner += d * std::complex<double>{ph.re.to_double(), ph.im.to_double()};
        }
        Real wmag = Real::exp(pi * k / a);
        std::complex<double> w{wmag.to_double(), 0};
        if (form == KeySumForm::refined && spec.b() != 0.0) {
            ComplexReal ph = e_of(Real(spec.b(), bits) * k / a);
            w *= std::complex<double>{ph.re.to_double(), ph.im.to_double()};
        }
        acc += w * inner;
    }
    return acc;
}

}  // namespace apzeta::oracle
