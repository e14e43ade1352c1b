#include "apzeta/moments.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "apzeta/expsum.hpp"
#include "apzeta/numerics.hpp"
#include "apzeta/zeta.hpp"

namespace apzeta {

namespace {

struct NRange {
    std::uint64_t lo, hi;  // inclusive; empty if lo > hi
    bool empty() const { return lo > hi; }
};

NRange ordinate_range(double a, double b, double T) {
    // integers n >= 0 with 0 < a n + b <= T
    std::int64_t nlo = 0;
    if (b <= 0) nlo = static_cast<std::int64_t>(std::floor(-b / a)) + 1;
    while (a * static_cast<double>(nlo) + b <= 0) ++nlo;
    while (nlo > 0 && a * static_cast<double>(nlo - 1) + b > 0) --nlo;
    if (nlo < 0) nlo = 0;
    auto nhi = static_cast<std::int64_t>(std::floor((T - b) / a));
    while (a * static_cast<double>(nhi) + b > T) --nhi;
    while (a * static_cast<double>(nhi + 1) + b <= T) ++nhi;
    if (nhi < nlo) return {1, 0};
    return {static_cast<std::uint64_t>(nlo), static_cast<std::uint64_t>(nhi)};
}

}  // namespace

double discrete_moment(const MomentRequest& req) {
    if (!(req.T > 0)) throw std::invalid_argument("discrete_moment: T must be positive");
    double a = req.spec.spacing_d();
    double b = req.spec.b();
    NRange range = ordinate_range(a, b, req.T);
    if (range.empty()) throw std::invalid_argument("discrete_moment: no ordinates in (0, T]");

    std::uint64_t count = range.hi - range.lo + 1;
    std::uint64_t chunk = std::max<std::uint64_t>(1, req.grid.chunk);
    std::uint64_t nchunks = (count + chunk - 1) / chunk;
    int threads = req.grid.threads > 0 ? req.grid.threads
                                       : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = static_cast<int>(std::min<std::uint64_t>(threads, nchunks));

    std::vector<double> partial(nchunks, 0.0);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= nchunks) return;
            std::uint64_t lo = range.lo + c * chunk;
            std::uint64_t hi = std::min(range.hi, lo + chunk - 1);
            Kahan acc;
            for (std::uint64_t n = lo; n <= hi; ++n) {
                double t = a * static_cast<double>(n) + b;
                acc.add(zeta_half_line(t).zeta_abs_sq);
            }
            partial[c] = acc.value();
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    // combine in fixed chunk order so the result is independent of threading
    Kahan total;
    for (double v : partial) total.add(v);
    return total.value();
}

double main_term_thm1(double a, double T, bool leading_only) {
    if (!(T > 1) || !(a > 0)) throw std::invalid_argument("main_term_thm1: need T > 1, a > 0");
    int bits = default_precision_bits();
    Real Tr(T, bits), ar(a, bits);
    Real lead = Tr / ar * Real::log(Tr);
    if (leading_only) return lead.to_double();
    const auto& cs = constants(bits);
    Real full = Tr / ar * (Real::log(Tr) + cs.gamma_euler * 2L - 1L - cs.log_2pi);
    return full.to_double();
}

DeltaFactor delta_factor(std::int64_t r, std::int64_t s, double b) {
    if (s < 1 || r <= s) throw std::invalid_argument("delta_factor: need r > s >= 1");
    if (std::gcd(r, s) != 1) throw std::invalid_argument("delta_factor: need gcd(r,s) = 1");
    int bits = default_precision_bits();
    Real rs(static_cast<long>(r * s), bits);
    Real logratio = Real::log(Real(static_cast<long>(r), bits) / Real(static_cast<long>(s), bits));
    Real c = Real::cos(Real(b, bits) * logratio);
    Real denom = rs + 1L - Real::sqrt(rs) * 2L * c;
    Real one_plus = (rs - 1L) / denom;
    DeltaFactor out;
    out.r = r;
    out.s = s;
    out.b = b;
    out.factor_1_plus_delta = one_plus.to_double();
    out.delta = (one_plus - 1L).to_double();
    return out;
}

double main_term_thm2(const ProgressionSpec& spec, double T) {
    if (spec.form() != ProgressionSpec::Form::rational_power)
        throw std::invalid_argument("main_term_thm2: spec must be rational-power form");
    if (!(T > 1)) throw std::invalid_argument("main_term_thm2: need T > 1");
    int bits = default_precision_bits();
    DeltaFactor df = delta_factor(spec.r(), spec.s(), spec.b());
    Real Tr(T, bits);
    Real ar = spec.spacing(bits);
    Real lift(df.factor_1_plus_delta, bits);
    if (spec.k0() > 1) return (Tr / ar * Real::log(Tr) * lift).to_double();
    const auto& cs = constants(bits);
    Real rs(static_cast<long>(spec.r() * spec.s()), bits);
    Real second = Real(df.delta, bits) * Real::sqrt(rs) * Real::log(rs) / (Real::sqrt(rs) - 1L);
    Real full = Tr / ar * ((Real::log(Tr) + cs.gamma_euler * 2L - 1L - cs.log_2pi) * lift - second);
    return full.to_double();
}

// ---------------------------------------------------------------------------

namespace {

struct Window {
    std::uint64_t lo, hi;  // sum over lo < m <= hi
};

// open interval (A, B) of integers, as a half-open (lo, hi] window
Window open_window(const Real& A, const Real& B) {
    mpz_class lo = Real::floor(A).to_mpz_floor();
    mpz_class hi;
    {
        Real fb = Real::floor(B);
        hi = fb.to_mpz_floor();
        if (fb == B) hi -= 1;  // strict m < B
    }
    if (lo < 0) lo = 0;
    if (hi < lo) hi = lo;
    return {lo.get_ui(), hi.get_ui()};
}

// sum_{lo < m <= hi} d(m) e(alpha m) with double-double phase stepping
std::complex<double> float_window_sum(const DivisorTable& table, Window w, const Real& alpha) {
    if (w.hi <= w.lo) return {0, 0};
    DD step = dd_from_real(reduce_mod_one(alpha));
    DD ph = dd_from_real(reduce_mod_one(alpha * Real(static_cast<unsigned long>(w.lo + 1),
                                                     alpha.precision())));
    Kahan re, im;
    for (std::uint64_t m = w.lo + 1; m <= w.hi; ++m) {
        double ang = 2 * M_PI * ph.hi + 2 * M_PI * ph.lo;
        double d = table.d(m);
        re.add(d * std::cos(ang));
        im.add(d * std::sin(ang));
        ph = dd_frac(dd_add(ph, step));
    }
    return {re.value(), im.value()};
}

}  // namespace

std::complex<double> key_sum(const ProgressionSpec& spec, double T, const DivisorTable& table,
                             KeySumForm form) {
    if (!(T > 0)) throw std::invalid_argument("key_sum: T must be positive");
    int bits = std::max(default_precision_bits(),
                        64 + static_cast<int>(std::log2(std::max(T, 2.0))) + 32);
    Real Tr(T, bits);
    Real a = spec.spacing(bits);
    const Real pi = Real::pi(bits);

    // 1 <= k < (a/2pi) log(T/pi)
    Real bound = a / (pi * 2L) * Real::log(Tr / pi);
    long kmax = Real::floor(bound).to_long();
    if (Real(kmax, bits) == bound) kmax -= 1;

    std::complex<double> acc{0, 0};
    for (long k = 1; k <= kmax; ++k) {
        Real expo = pi * 2L * k / a;
        Real alpha = Real::exp(expo);       // e^{2 pi k / a}
        Real decay = Real::exp(-expo);      // e^{-2 pi k / a}

        Window w{};
        if (form == KeySumForm::refined) {
            Real A = Tr / (pi * 2L) * decay;
            Real B = Tr / pi * decay;
            w = open_window(A, B);
        } else {
            Real B = Tr * decay;
            w = open_window(Real(0.0, bits), B);
        }
        if (w.hi > table.limit())
            throw std::out_of_range("key_sum: divisor table smaller than the k=" +
                                    std::to_string(k) + " window");

        std::complex<double> inner;
        bool exact_rational = spec.form() == ProgressionSpec::Form::rational_power &&
                              k % spec.k0() == 0;
        if (exact_rational) {
            long j = k / spec.k0();
            // guard against overflowing the int64 path; fall back to float phases
            double rpow = std::pow(static_cast<double>(spec.r()), static_cast<double>(j));
            double spow = std::pow(static_cast<double>(spec.s()), static_cast<double>(j));
            if (rpow < 4e18 && spow < 4e18) {
                std::int64_t R = 1, S = 1;
                for (long i = 0; i < j; ++i) R *= spec.r();
                for (long i = 0; i < j; ++i) S *= spec.s();
                inner = divisor_expsum_rational_window(table, w.lo, w.hi, -R, S);
            } else {
                inner = float_window_sum(table, w, -alpha);
            }
        } else {
            inner = float_window_sum(table, w, -alpha);
        }

        // weight e^{(pi + 2 pi i b) k / a} (refined) or e^{pi k / a} (intro)
        Real wmag = Real::exp(pi * k / a);
        std::complex<double> weight{wmag.to_double(), 0};
        if (form == KeySumForm::refined && spec.b() != 0.0) {
            Real phase = reduce_mod_one(Real(spec.b(), bits) * k / a);
            double angw = 2 * M_PI * phase.to_double();
            weight *= std::complex<double>{std::cos(angw), std::sin(angw)};
        }
        acc += weight * inner;
    }
    return acc;
}

MomentReport moment_report(const MomentRequest& req, const DivisorTable& table) {
    MomentReport rep;
    rep.T = req.T;
    rep.a = req.spec.spacing_d();
    rep.b = req.spec.b();
    bool rational = req.spec.form() == ProgressionSpec::Form::rational_power;
    rep.form = rational ? "rational_power" : "generic";

    rep.empirical = discrete_moment(req);

    double thm1_lead = main_term_thm1(rep.a, req.T, true);
    double thm1_full = main_term_thm1(rep.a, req.T, false);
    if (rational) {
        DeltaFactor df = delta_factor(req.spec.r(), req.spec.s(), req.spec.b());
        rep.predicted_leading = thm1_lead * df.factor_1_plus_delta;
        rep.predicted_full = main_term_thm2(req.spec, req.T);
        rep.diagnostics.emplace_back("delta", df.delta);
        rep.diagnostics.emplace_back("one_plus_delta", df.factor_1_plus_delta);
        rep.diagnostics.emplace_back("hypothesis_r_gt_2s",
                                     req.spec.r() > 2 * req.spec.s() ? 1.0 : 0.0);
    } else {
        rep.predicted_leading = thm1_lead;
        rep.predicted_full = thm1_full;
        double a_int = std::round(rep.a);
        rep.diagnostics.emplace_back("a_is_integer",
                                     std::abs(rep.a - a_int) < 1e-12 && a_int >= 1 ? 1.0 : 0.0);
    }
    if (rep.predicted_leading != 0) rep.ratio_leading = rep.empirical / rep.predicted_leading;
    if (rep.predicted_full != 0) rep.ratio_full = rep.empirical / rep.predicted_full;

    rep.key_sum_value = key_sum(req.spec, req.T, table, req.key_form);
    double tlogt = req.T * std::log(req.T);
    rep.key_sum_over_tlogt = std::abs(rep.key_sum_value) / tlogt;

    // continuous mean-square main term per unit sample density (T/a terms)
    rep.diagnostics.emplace_back("continuous_main_per_density", thm1_full);
    rep.diagnostics.emplace_back("enhancement_vs_continuous", rep.empirical / thm1_full);
    return rep;
}

}  // namespace apzeta
