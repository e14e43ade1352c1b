#include "apzeta/real.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <stdexcept>

namespace apzeta {

namespace {
std::atomic<int> g_default_bits{128};
}

int default_precision_bits() { return g_default_bits.load(std::memory_order_relaxed); }

void set_default_precision_bits(int bits) {
    if (bits < 64) throw std::domain_error("precision must be at least 64 significand bits");
    g_default_bits.store(bits, std::memory_order_relaxed);
}

static int pick_bits(int bits) { return bits > 0 ? bits : default_precision_bits(); }

struct uninit_tag {};

Real::Real(int bits_only, uninit_tag) { mpfr_init2(v_, pick_bits(bits_only)); }

Real::Real(double x, int bits) {
    mpfr_init2(v_, pick_bits(bits));
    mpfr_set_d(v_, x, MPFR_RNDN);
}

Real::Real(long n, int bits) {
    mpfr_init2(v_, pick_bits(bits));
    mpfr_set_si(v_, n, MPFR_RNDN);
}

Real::Real(unsigned long n, int bits) {
    mpfr_init2(v_, pick_bits(bits));
    mpfr_set_ui(v_, n, MPFR_RNDN);
}

Real::Real(const std::string& decimal, int bits) {
    mpfr_init2(v_, pick_bits(bits));
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("unparsable real literal: " + decimal);
}

Real::Real(const mpz_class& z, int bits) {
    mpfr_init2(v_, pick_bits(bits));
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& q, int bits) {
    mpfr_init2(v_, pick_bits(bits));
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

mpz_class Real::to_mpz_floor() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
}

mpq_class Real::to_mpq_exact() const {
    if (!is_finite()) throw std::domain_error("non-finite value has no rational form");
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
}

std::string Real::str(int digits) const {
    if (digits <= 0) digits = static_cast<int>(precision() * 0.30103) + 2;
    mpfr_exp_t e;
    char* raw = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!mant.empty() && mant[0] == '-') {
        sign = "-";
        mant = mant.substr(1);
    }
    if (mant.empty() || mant.find_first_not_of('0') == std::string::npos) return "0";
    return sign + "0." + mant + "e" + std::to_string(e);
}

Real Real::ulp() const {
    if (mpfr_zero_p(v_) || !is_finite()) return Real(0.0, precision());
    Real r(precision(), uninit_tag{});
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    mpfr_mul_2si(r.v_, r.v_, 1 - precision(), MPFR_RNDN);
    return r;
}

static int join(const Real& a, const Real& b) {
    return std::max(static_cast<int>(mpfr_get_prec(a.raw())), static_cast<int>(mpfr_get_prec(b.raw())));
}

#define APZ_BINOP(op, fn)                                      \
    Real operator op(const Real& a, const Real& b) {           \
        Real r(join(a, b), uninit_tag{});                      \
        fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);              \
        return r;                                              \
    }
APZ_BINOP(+, mpfr_add)
APZ_BINOP(-, mpfr_sub)
APZ_BINOP(*, mpfr_mul)
APZ_BINOP(/, mpfr_div)
#undef APZ_BINOP

Real Real::operator-() const {
    Real r(precision(), uninit_tag{});
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, long b) {
    Real r(a.precision(), uninit_tag{});
    mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
Real operator-(const Real& a, long b) {
    Real r(a.precision(), uninit_tag{});
    mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
Real operator*(const Real& a, long b) {
    Real r(a.precision(), uninit_tag{});
    mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
Real operator/(const Real& a, long b) {
    Real r(a.precision(), uninit_tag{});
    mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
Real operator/(long a, const Real& b) {
    Real r(b.precision(), uninit_tag{});
    mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
    return r;
}
Real operator*(const Real& a, double b) {
    Real r(a.precision(), uninit_tag{});
    mpfr_mul_d(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}

Real Real::pi(int bits) {
    Real r(pick_bits(bits), uninit_tag{});
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real Real::euler_gamma(int bits) {
    Real r(pick_bits(bits), uninit_tag{});
    mpfr_const_euler(r.v_, MPFR_RNDN);
    return r;
}

Real Real::log_2pi(int bits) {
    int p = pick_bits(bits);
    Real two_pi = pi(p + 16) * 2L;
    Real r(p, uninit_tag{});
    mpfr_log(r.v_, two_pi.raw(), MPFR_RNDN);
    return r;
}

#define APZ_UNFN(name, fn)                       \
    Real Real::name(const Real& x) {             \
        Real r(x.precision(), uninit_tag{});     \
        fn(r.v_, x.v_, MPFR_RNDN);               \
        return r;                                \
    }
APZ_UNFN(exp, mpfr_exp)
APZ_UNFN(log, mpfr_log)
APZ_UNFN(sqrt, mpfr_sqrt)
APZ_UNFN(cos, mpfr_cos)
APZ_UNFN(sin, mpfr_sin)
APZ_UNFN(abs, mpfr_abs)
#undef APZ_UNFN

Real Real::floor(const Real& x) {
    Real r(x.precision(), uninit_tag{});
    mpfr_floor(r.v_, x.v_);
    return r;
}

void Real::sin_cos(const Real& x, Real& s, Real& c) {
    Real rs(x.precision(), uninit_tag{}), rc(x.precision(), uninit_tag{});
    mpfr_sin_cos(rs.v_, rc.v_, x.v_, MPFR_RNDN);
    s = std::move(rs);
    c = std::move(rc);
}

Real Real::pow(const Real& x, const Real& y) {
    Real r(join(x, y), uninit_tag{});
    mpfr_pow(r.v_, x.v_, y.v_, MPFR_RNDN);
    return r;
}

Real Real::pow_si(const Real& x, long e) {
    Real r(x.precision(), uninit_tag{});
    mpfr_pow_si(r.v_, x.v_, e, MPFR_RNDN);
    return r;
}

Real Real::fma(const Real& a, const Real& b, const Real& c) {
    Real r(std::max(join(a, b), c.precision()), uninit_tag{});
    mpfr_fma(r.v_, a.v_, b.v_, c.v_, MPFR_RNDN);
    return r;
}

const Constants& constants(int bits) {
    static std::mutex mu;
    static std::map<int, Constants> cache;
    int p = pick_bits(bits);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it == cache.end()) {
        Constants c{Real::euler_gamma(p), Real::pi(p), Real::log_2pi(p)};
        it = cache.emplace(p, std::move(c)).first;
    }
    return it->second;
}

}  // namespace apzeta
