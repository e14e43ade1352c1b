#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

namespace apzeta {

// Precision policy for all extended-precision arithmetic. Rounding is
// nearest-even throughout (MPFR_RNDN); derived constants carry relative
// error <= 2^(1-significand_bits).
struct PrecisionContext {
    int significand_bits = 128;
};

int default_precision_bits();
void set_default_precision_bits(int bits);  // throws std::domain_error if bits < 64

// RAII value wrapper over mpfr_t. Binary operations round to the wider of
// the two operand precisions. Immutable in spirit: every operation returns
// a fresh value.
class Real {
  public:
    Real() : Real(0.0) {}
    explicit Real(double x, int bits = 0);
    explicit Real(long n, int bits = 0);
    explicit Real(unsigned long n, int bits = 0);
    explicit Real(const std::string& decimal, int bits = 0);
    explicit Real(const mpz_class& z, int bits = 0);
    explicit Real(const mpq_class& q, int bits = 0);

    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    mpz_class to_mpz_floor() const;
    mpq_class to_mpq_exact() const;  // exact dyadic value
    std::string str(int digits = 0) const;

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // magnitude of one unit in the last place; 0 for zero
    Real ulp() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    Real operator-() const;

    friend Real operator+(const Real& a, long b);
    friend Real operator-(const Real& a, long b);
    friend Real operator*(const Real& a, long b);
    friend Real operator/(const Real& a, long b);
    friend Real operator/(long a, const Real& b);
    friend Real operator*(const Real& a, double b);

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    bool operator<(double b) const { return mpfr_cmp_d(v_, b) < 0; }
    bool operator>(double b) const { return mpfr_cmp_d(v_, b) > 0; }

    static Real pi(int bits = 0);
    static Real euler_gamma(int bits = 0);
    static Real log_2pi(int bits = 0);

    static Real exp(const Real& x);
    static Real log(const Real& x);
    static Real sqrt(const Real& x);
    static Real cos(const Real& x);
    static Real sin(const Real& x);
    static void sin_cos(const Real& x, Real& s, Real& c);
    static Real floor(const Real& x);
    static Real abs(const Real& x);
    static Real pow(const Real& x, const Real& y);
    static Real pow_si(const Real& x, long e);
    static Real fma(const Real& a, const Real& b, const Real& c);  // a*b+c in one rounding

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

  private:
    explicit Real(int bits_only, struct uninit_tag);
    mpfr_t v_;
};

// Fundamental constants at a given precision, computed on first use (never
// hard-coded literals, so precision upgrades are automatic).
struct Constants {
    Real gamma_euler;
    Real pi;
    Real log_2pi;
};
const Constants& constants(int bits = 0);

// Minimal complex number over Real, for the few places that need
// full-precision complex values (e(x) at context precision, test oracles).
struct ComplexReal {
    Real re, im;

    friend ComplexReal operator+(const ComplexReal& a, const ComplexReal& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexReal operator-(const ComplexReal& a, const ComplexReal& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexReal operator*(const ComplexReal& a, const ComplexReal& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    Real abs() const { return Real::sqrt(re * re + im * im); }
};

}  // namespace apzeta
