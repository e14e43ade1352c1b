#include "apzeta/diophantine.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace apzeta {

namespace {

mpz_class mpq_floor(const mpq_class& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return f;
}

struct Interval {
    mpq_class lo, hi;
};

Interval value_interval(const Real& alpha, int working_precision) {
    mpq_class center = alpha.to_mpq_exact();
    int prec = alpha.precision();
    if (working_precision > 0 && working_precision < prec) prec = working_precision;
    // radius = |alpha| * 2^(1-prec), as an exact rational
    mpq_class radius = abs(center);
    if (prec > 1) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(prec - 1));
        radius /= mpq_class(scale);
    }
    return {center - radius, center + radius};
}

}  // namespace

ContinuedFraction continued_fraction(const Real& alpha, int n_terms) {
    if (!alpha.is_finite() || alpha.sign() <= 0)
        throw std::domain_error("continued_fraction: alpha must be positive and finite");
    return continued_fraction(alpha, n_terms, 0);
}

ContinuedFraction continued_fraction(const Real& alpha, int n_terms, int working_precision) {
    if (!alpha.is_finite() || alpha.sign() <= 0)
        throw std::domain_error("continued_fraction: alpha must be positive and finite");
    if (n_terms < 1) throw std::invalid_argument("continued_fraction: n_terms must be >= 1");

    auto iv = value_interval(alpha, working_precision);
    ContinuedFraction cf;
    mpz_class p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
    mpq_class lo = iv.lo, hi = iv.hi;

    for (int i = 0; i < n_terms; ++i) {
        mpz_class a_lo = mpq_floor(lo);
        mpz_class a_hi = mpq_floor(hi);
        if (a_lo != a_hi) break;  // interval straddles a quotient boundary
        if (i > 0 && a_lo < 1) break;
        cf.quotients.push_back(a_lo);
        mpz_class p = a_lo * p_prev + p_prev2;
        mpz_class q = a_lo * q_prev + q_prev2;
        cf.convergents.emplace_back(p, q);
        p_prev2 = p_prev; p_prev = p;
        q_prev2 = q_prev; q_prev = q;

        mpq_class flo = lo - mpq_class(a_lo);
        mpq_class fhi = hi - mpq_class(a_lo);
        if (sgn(flo) == 0 || sgn(fhi) == 0) {
            cf.exhausted = true;  // an endpoint is exactly rational here
            break;
        }
        // reciprocals swap the interval orientation
        mpq_class nlo = 1 / fhi, nhi = 1 / flo;
        lo = nlo;
        hi = nhi;
    }
    cf.certified_terms = static_cast<int>(cf.quotients.size());
    if (cf.certified_terms == 0)
        throw PrecisionError("continued_fraction: cannot certify a0 at this precision");
    return cf;
}

RationalApprox dirichlet_approx(const Real& alpha, std::uint64_t M) {
    if (M < 1) throw std::invalid_argument("dirichlet_approx: M must be >= 1");
    if (!alpha.is_finite() || alpha.sign() <= 0)
        throw std::domain_error("dirichlet_approx: alpha must be positive and finite");
    // precision must resolve alpha finer than 1/(2M)
    {
        Real u = alpha.ulp();
        Real bound = 1L / (Real(static_cast<unsigned long>(M), 64) * 2L);
        if (!(u < bound)) throw PrecisionError("dirichlet_approx: alpha precision coarser than 1/(2M)");
    }
    mpz_class Mz(static_cast<unsigned long>(M));
    mpz_class qmax = sqrt(Mz);  // floor
    auto iv = value_interval(alpha, 0);
    mpq_class center = alpha.to_mpq_exact();

    // certified err bound over the interval, as an exact rational
    auto cert_err = [&](const mpz_class& p, const mpz_class& q) {
        mpq_class f(p, q);
        f.canonicalize();
        mpq_class e1 = abs(iv.lo - f), e2 = abs(iv.hi - f);
        return e1 > e2 ? e1 : e2;
    };
    // err <= 1/(q sqrt(M))  <=>  err^2 q^2 M <= 1, checked exactly
    auto qualifies = [&](const mpz_class& q, const mpq_class& err) {
        if (q > qmax) return false;
        mpq_class lhs = err * err * mpq_class(q * q) * mpq_class(Mz);
        return lhs <= 1;
    };

    mpz_class best_p, best_q;
    mpq_class best_err;
    bool have = false;
    auto consider = [&](const mpz_class& p, const mpz_class& q) {
        if (q < 1 || q > qmax) return false;
        mpq_class e = cert_err(p, q);
        if (!qualifies(q, e)) return false;
        if (!have || q > best_q) {
            best_p = p;
            best_q = q;
            best_err = e;
            have = true;
        }
        return true;
    };

    // walk convergents of the interval midpoint until q exceeds sqrt(M);
    // certification happens per candidate against the full interval
    mpz_class p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
    mpq_class x = center;
    for (int i = 0; i < 40000; ++i) {
        mpz_class a = mpq_floor(x);
        if (i > 0 && a < 1) break;
        mpz_class p = a * p_prev + p_prev2;
        mpz_class q = a * q_prev + q_prev2;
        if (q > qmax) {
            // intermediate fractions j*p_prev + p_prev2 may still fit; q grows
            // with j, so the first qualifying j from above has the largest q
            mpz_class jmax = (qmax - q_prev2) / q_prev;  // largest j with qs <= qmax
            for (mpz_class j = jmax; j >= 1; --j) {
                mpz_class ps = j * p_prev + p_prev2;
                mpz_class qs = j * q_prev + q_prev2;
                if (consider(ps, qs)) break;
            }
            break;
        }
        consider(p, q);
        p_prev2 = p_prev; p_prev = p;
        q_prev2 = q_prev; q_prev = q;
        mpq_class frac = x - mpq_class(a);
        if (sgn(frac) == 0) break;
        x = 1 / frac;
    }
    if (!have)
        throw PrecisionError("dirichlet_approx: no certifiable approximation; raise precision");

    RationalApprox out;
    out.p = best_p;
    out.q = best_q;
    out.M = M;
    out.err = Real(best_err, 96).to_double() * (1 + 4e-16) + 1e-300;
    return out;
}

// ---------------------------------------------------------------------------

ProgressionSpec ProgressionSpec::generic(Real a, double b) {
    if (!a.is_finite() || a.sign() <= 0)
        throw std::domain_error("ProgressionSpec: spacing a must be positive");
    ProgressionSpec s;
    s.form_ = Form::generic;
    s.a_generic_ = std::move(a);
    s.b_ = b;
    return s;
}

ProgressionSpec ProgressionSpec::rational_power(std::int64_t r, std::int64_t s, int k0, double b) {
    if (s < 1 || r <= s) throw std::invalid_argument("ProgressionSpec: need r > s >= 1");
    if (std::gcd(r, s) != 1) throw std::invalid_argument("ProgressionSpec: need gcd(r,s) = 1");
    if (k0 < 1) throw std::invalid_argument("ProgressionSpec: need k0 >= 1");
    ProgressionSpec out;
    out.form_ = Form::rational_power;
    out.r_ = r;
    out.s_ = s;
    out.k0_ = k0;
    out.b_ = b;
    return out;
}

Real ProgressionSpec::spacing(int bits) const {
    if (form_ == Form::generic) return a_generic_;
    int p = bits > 0 ? bits : default_precision_bits();
    Real ratio = Real(static_cast<long>(r_), p + 16) / Real(static_cast<long>(s_), p + 16);
    return Real::pi(p + 16) * 2L * static_cast<long>(k0_) / Real::log(ratio);
}

double ProgressionSpec::spacing_d() const { return spacing(96).to_double(); }

// ---------------------------------------------------------------------------

namespace {

// maximal l with r = x^l and s = y^l simultaneously
void perfect_power_split(const mpz_class& r, const mpz_class& s, int& l, mpz_class& x,
                         mpz_class& y) {
    auto bits = mpz_sizeinbase(r.get_mpz_t(), 2);
    for (unsigned long cand = bits; cand >= 2; --cand) {
        mpz_class xr, yr;
        int ok_r = mpz_root(xr.get_mpz_t(), r.get_mpz_t(), cand);
        if (!ok_r) continue;
        int ok_s = mpz_root(yr.get_mpz_t(), s.get_mpz_t(), cand);
        if (!ok_s) continue;
        l = static_cast<int>(cand);
        x = xr;
        y = yr;
        return;
    }
    l = 1;
    x = r;
    y = s;
}

}  // namespace

SpacingClassification classify_spacing(const ProgressionSpec& spec, int k_max,
                                       double T_for_generic) {
    if (k_max < 1) throw std::invalid_argument("classify_spacing: k_max must be >= 1");
    SpacingClassification out;

    if (spec.form() == ProgressionSpec::Form::rational_power) {
        perfect_power_split(mpz_class(static_cast<long>(spec.r())),
                            mpz_class(static_cast<long>(spec.s())), out.power_l, out.x, out.y);
        for (int k = 1; k <= k_max; ++k) {
            SpacingEntry e;
            e.k = k;
            if (k % spec.k0() == 0) {
                e.rational = true;
                unsigned long j = static_cast<unsigned long>(k / spec.k0());
                mpz_ui_pow_ui(e.num.get_mpz_t(), static_cast<unsigned long>(spec.r()), j);
                mpz_ui_pow_ui(e.den.get_mpz_t(), static_cast<unsigned long>(spec.s()), j);
            }
            out.entries.push_back(std::move(e));
        }
        return out;
    }

    // generic spacing: report the Dirichlet approximant of e^{2 pi k/a} at
    // scale M(k) = T e^{-2 pi k/a}
    out.x = 0;
    out.y = 0;
    for (int k = 1; k <= k_max; ++k) {
        SpacingEntry e;
        e.k = k;
        double expo = 2 * M_PI * k / spec.spacing_d();
        double mk = T_for_generic * std::exp(-expo);
        if (mk >= 1.0) {
            int need = 96 + static_cast<int>(expo * 1.4427) + 64;  // log2(alpha) + log2(M) slack
            Real a = spec.spacing(need);
            Real alpha_k = Real::exp(Real::pi(need) * 2L * static_cast<long>(k) / a);
            e.best = dirichlet_approx(alpha_k, static_cast<std::uint64_t>(mk));
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------

WaldschmidtBound waldschmidt_floor(std::int64_t k, std::int64_t a, const mpz_class& p) {
    if (k < 1 || a < 1) throw std::domain_error("waldschmidt_floor: need k >= 1 and a >= 1");
    if (p < 3) throw std::domain_error("waldschmidt_floor: need p >= 3 (log log p > 0)");
    double logp = Real(p, 96).to_double();
    logp = std::log(logp);  // p is huge at most ~1e300 scale in practice via double
    if (!std::isfinite(logp)) {
        // fall back to exact bit length for astronomically large p
        logp = static_cast<double>(mpz_sizeinbase(p.get_mpz_t(), 2)) * M_LN2;
    }
    WaldschmidtBound out;
    out.k = k;
    out.a = a;
    out.p = p;
    out.log_bound = -std::exp2(72) * std::log(2.0 * static_cast<double>(k)) *
                    std::log(2.0 * static_cast<double>(a)) * logp * std::log(logp);
    return out;
}

double waldschmidt_logp_floor(double T, std::int64_t k, std::int64_t a) {
    if (!(T > 1) || k < 1 || a < 1)
        throw std::domain_error("waldschmidt_logp_floor: need T > 1, k >= 1, a >= 1");
    double B = (0.5 * std::log(T) - M_PI * static_cast<double>(k) / static_cast<double>(a)) /
               (std::exp2(72) * std::log(2.0 * static_cast<double>(k)) *
                std::log(2.0 * static_cast<double>(a)));
    if (B <= 0) return 0.0;  // the target quality is not constrained at all
    // solve x log x = B, x >= 1
    double x = B > M_E ? B / std::log(B) : 1.0 + B;
    for (int i = 0; i < 60; ++i) {
        double f = x * std::log(x) - B;
        double fp = std::log(x) + 1.0;
        double nx = x - f / fp;
        if (!(nx > 1.0)) nx = 0.5 * (x + 1.0);
        if (std::abs(nx - x) < 1e-15 * std::max(1.0, x)) {
            x = nx;
            break;
        }
        x = nx;
    }
    return x;
}

}  // namespace apzeta
