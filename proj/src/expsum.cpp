#include "apzeta/expsum.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "apzeta/numerics.hpp"

namespace apzeta {

namespace {

constexpr double kNearIntCut = 0x1p-20;  // switch geometric -> term-by-term

inline std::complex<double> cis_frac(DD f) {
    double a = 2 * M_PI * f.hi + 2 * M_PI * f.lo;
    return {std::cos(a), std::sin(a)};
}

struct ErrAccum {
    double bound = 0;
};

// sum_{j=0}^{L-1} e(phase0 + j*beta); beta, phase0 already reduced mod 1.
std::complex<double> geom_window(DD beta, DD phase0, std::int64_t L, ErrAccum* err) {
    if (L <= 0) return {0, 0};
    double nb = dist_to_nearest_int(beta.hi + beta.lo);
    if (nb < kNearIntCut) {
        // denominator e(beta)-1 too small; accumulate directly
        std::complex<double> acc{0, 0};
        DD ph = phase0;
        for (std::int64_t j = 0; j < L; ++j) {
            acc += cis_frac(ph);
            ph = dd_frac(dd_add(ph, beta));
        }
        if (err) err->bound += 1e-15 * static_cast<double>(L);
        return acc;
    }
    std::complex<double> num = cis_frac(dd_frac(dd_mul(beta, static_cast<double>(L)))) - 1.0;
    std::complex<double> den = cis_frac(beta) - 1.0;
    std::complex<double> lead = cis_frac(phase0);
    std::complex<double> s = lead * num / den;
    if (err) {
        double mag = std::abs(s);
        err->bound += (1.6e-15 * (1.0 + mag)) / std::abs(den) + 1e-15 * mag;
    }
    return s;
}

struct DirectSum {
    std::complex<double> value;
    double accuracy;
};

DirectSum direct_core(const DivisorTable& table, std::uint64_t M, DD frac_alpha) {
    Kahan re, im;
    DD ph{0, 0};
    for (std::uint64_t m = 1; m <= M; ++m) {
        ph = dd_frac(dd_add(ph, frac_alpha));
        auto c = cis_frac(ph);
        double w = table.d(m);
        re.add(w * c.real());
        im.add(w * c.imag());
    }
    double dm = static_cast<double>(table.prefix(M));
    double acc = dm * (1e-15 + 2 * M_PI * static_cast<double>(M) * 0x1p-103);
    return {{re.value(), im.value()}, acc};
}

DirectSum hyperbola_core(std::uint64_t M, DD frac_alpha) {
    if (M > (1ull << 62)) throw std::invalid_argument("divisor_expsum_hyperbola: M too large");
    auto usq = static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(M))));
    while ((usq + 1) * (usq + 1) <= M) ++usq;
    while (usq * usq > M) --usq;

    Kahan re, im;
    ErrAccum err;
    for (std::uint64_t u = 1; u <= usq; ++u) {
        std::uint64_t vmax = M / u;
        if (vmax <= u) continue;
        DD beta = dd_frac(dd_mul(frac_alpha, static_cast<double>(u)));
        DD ph0 = dd_frac(dd_mul(beta, static_cast<double>(u + 1)));  // phase at v = u+1
        auto s = geom_window(beta, ph0, static_cast<std::int64_t>(vmax - u), &err);
        re.add(2 * s.real());
        im.add(2 * s.imag());
    }
    for (std::uint64_t u = 1; u <= usq; ++u) {
        DD bu = dd_frac(dd_mul(frac_alpha, static_cast<double>(u)));
        auto c = cis_frac(dd_frac(dd_mul(bu, static_cast<double>(u))));
        re.add(c.real());
        im.add(c.imag());
        err.bound += 1e-15;
    }
    double acc = 2 * err.bound + 2e-15 * static_cast<double>(usq);
    return {{re.value(), im.value()}, acc};
}

}  // namespace

std::complex<double> geometric_sum(double alpha, std::int64_t n1, std::int64_t n2) {
    if (n1 > n2) throw std::invalid_argument("geometric_sum: need n1 <= n2");
    if (!std::isfinite(alpha)) throw std::domain_error("geometric_sum: non-finite alpha");
    double fa = reduce_mod_one(alpha);
    if (fa == 0.0) return {static_cast<double>(n2 - n1), 0.0};
    DD beta{fa, 0};
    DD ph0 = dd_frac(dd_mul(beta, static_cast<double>(n1 + 1)));
    return geom_window(beta, ph0, n2 - n1, nullptr);
}

ExpSumResult divisor_expsum_direct(const DivisorTable& table, std::uint64_t M, double alpha) {
    if (M < 1 || M > table.limit())
        throw std::out_of_range("divisor_expsum_direct: M outside table range");
    auto core = direct_core(table, M, DD{reduce_mod_one(alpha), 0});
    return {M, alpha, core.value, ExpSumAlgorithm::direct, core.accuracy};
}

ExpSumResult divisor_expsum_direct(const DivisorTable& table, std::uint64_t M, const Real& alpha) {
    if (M < 1 || M > table.limit())
        throw std::out_of_range("divisor_expsum_direct: M outside table range");
    auto core = direct_core(table, M, dd_from_real(reduce_mod_one(alpha)));
    return {M, alpha.to_double(), core.value, ExpSumAlgorithm::direct, core.accuracy};
}

ExpSumResult divisor_expsum_hyperbola(std::uint64_t M, double alpha) {
    if (M < 1) throw std::invalid_argument("divisor_expsum_hyperbola: M must be >= 1");
    auto core = hyperbola_core(M, DD{reduce_mod_one(alpha), 0});
    return {M, alpha, core.value, ExpSumAlgorithm::hyperbola, core.accuracy};
}

ExpSumResult divisor_expsum_hyperbola(std::uint64_t M, const Real& alpha) {
    if (M < 1) throw std::invalid_argument("divisor_expsum_hyperbola: M must be >= 1");
    auto core = hyperbola_core(M, dd_from_real(reduce_mod_one(alpha)));
    return {M, alpha.to_double(), core.value, ExpSumAlgorithm::hyperbola, core.accuracy};
}

std::complex<double> divisor_expsum_rational_window(const DivisorTable& table, std::uint64_t lo,
                                                    std::uint64_t hi, std::int64_t r,
                                                    std::int64_t s) {
    if (s < 1) throw std::invalid_argument("rational expsum: s must be >= 1");
    if (s > 100'000'000) throw ResourceError("rational expsum: s exceeds residue-bucket cap");
    if (std::gcd(static_cast<std::uint64_t>(r < 0 ? -r : r), static_cast<std::uint64_t>(s)) != 1)
        throw std::invalid_argument("rational expsum: gcd(r,s) must be 1");
    if (hi > table.limit()) throw std::out_of_range("rational expsum: range outside table");
    if (hi <= lo) return {0, 0};

    // exact integer weight per residue class, then one root of unity each
    std::vector<std::uint64_t> weight(static_cast<std::size_t>(s), 0);
    for (std::uint64_t m = lo + 1; m <= hi; ++m) weight[m % static_cast<std::uint64_t>(s)] += table.d(m);

    std::int64_t rmod = ((r % s) + s) % s;
    Kahan re, im;
    for (std::int64_t rho = 0; rho < s; ++rho) {
        if (weight[static_cast<std::size_t>(rho)] == 0) continue;
        auto num = static_cast<std::int64_t>((static_cast<__int128>(rho) * rmod) % s);
        double a = 2 * M_PI * static_cast<double>(num) / static_cast<double>(s);
        double w = static_cast<double>(weight[static_cast<std::size_t>(rho)]);
        re.add(w * std::cos(a));
        im.add(w * std::sin(a));
    }
    return {re.value(), im.value()};
}

RationalExpSum divisor_expsum_rational(const DivisorTable& table, double x, std::int64_t r,
                                       std::int64_t s) {
    if (!(x >= 1.0) || x > static_cast<double>(table.limit()))
        throw std::out_of_range("divisor_expsum_rational: x outside table range");
    auto M = static_cast<std::uint64_t>(std::floor(x));
    std::complex<double> value = divisor_expsum_rational_window(table, 0, M, r, s);

    int bits = default_precision_bits();
    const auto& cs = constants(bits);
    Real xr(x, bits);
    Real pred = xr / s * (Real::log(xr) + cs.gamma_euler * 2L - 1L - Real::log(Real(s, bits)) * 2L);
    RationalExpSum out;
    out.value = value;
    out.predicted_main = pred.to_double();
    out.residual = std::abs(value - std::complex<double>{out.predicted_main, 0});
    return out;
}

}  // namespace apzeta
