#include <doctest.h>

#include <cmath>
#include <random>

#include "apzeta/numerics.hpp"
#include "apzeta/real.hpp"

using namespace apzeta;

TEST_CASE("e_of at standard points") {
    CHECK(std::abs(e_of(0.0) - std::complex<double>{1, 0}) < 1e-15);
    CHECK(std::abs(e_of(0.5) - std::complex<double>{-1, 0}) < 1e-15);
    CHECK(std::abs(e_of(0.25) - std::complex<double>{0, 1}) < 1e-15);
    CHECK_THROWS_AS(e_of(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(e_of(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("e_of modulus and periodicity") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 500; ++i) {
        double x = dist(rng);
        CHECK(std::abs(std::abs(e_of(x)) - 1.0) < 2e-16);  // |e(x)| = 1 within 2 ulp
        CHECK(std::abs(e_of(x + 1.0) - e_of(x)) < 4e-16);
    }
    // large arguments up to 2^40
    std::uniform_real_distribution<double> big(-(double)(1ll << 40), (double)(1ll << 40));
    for (int i = 0; i < 200; ++i) {
        double x = big(rng);
        CHECK(std::abs(e_of(x + 1.0) - e_of(x)) < 4e-16);
    }
}

TEST_CASE("e_of at context precision") {
    ComplexReal z = e_of(Real(0.25, 128));
    CHECK(std::abs(z.re.to_double()) < 1e-30);
    CHECK(z.im.to_double() == doctest::Approx(1.0).epsilon(1e-15));
    Real mod = (z.re * z.re + z.im * z.im) - 1L;
    CHECK(std::abs(mod.to_double()) < 1e-37);  // unit modulus at 128 bits
}

TEST_CASE("reduce_mod_one") {
    CHECK(reduce_mod_one(3.25) == 0.25);
    CHECK(reduce_mod_one(-0.25) == 0.75);
    // exact floor subtraction of the stored double
    double x = 535.4916555;
    CHECK(reduce_mod_one(x) == x - 535.0);
    CHECK(reduce_mod_one(x) == doctest::Approx(0.4916555).epsilon(1e-9));
    CHECK(reduce_mod_one(Real(3.25, 128)).to_double() == 0.25);

    Reduced r = reduce_mod_one_err(1e12 + 0.5);
    CHECK(r.err == doctest::Approx((1e12 + 0.5) * 0x1p-52));
    Reduced rr = reduce_mod_one_err(Real(1e12, 128) + Real(0.5, 128));
    CHECK(rr.err < 1e-24);  // 128-bit ulp model
}

TEST_CASE("dist_to_nearest_int") {
    CHECK(dist_to_nearest_int(0.5) == 0.5);
    CHECK(dist_to_nearest_int(3.1) == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(dist_to_nearest_int(-2.75) == 0.25);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1e3, 1e3);
    for (int i = 0; i < 300; ++i) {
        double x = dist(rng);
        CHECK(dist_to_nearest_int(x) == dist_to_nearest_int(x + 1.0));
        CHECK(dist_to_nearest_int(x) == dist_to_nearest_int(-x));
        CHECK(dist_to_nearest_int(x) <= 0.5);
    }
}

TEST_CASE("constants carry full precision") {
    const auto& cs = constants(128);
    CHECK(cs.gamma_euler.to_double() == doctest::Approx(0.5772156649015329).epsilon(1e-16));
    CHECK(cs.pi.to_double() == doctest::Approx(M_PI).epsilon(1e-16));
    CHECK(cs.log_2pi.to_double() == doctest::Approx(1.8378770664093455).epsilon(1e-16));
    // recomputation at higher precision agrees far beyond double
    Real g192 = Real::euler_gamma(192), g256 = Real::euler_gamma(256);
    CHECK(Real::abs(g192 - g256).to_double() < 1e-57);
}

TEST_CASE("precision context floor") {
    CHECK_THROWS_AS(set_default_precision_bits(32), std::domain_error);
    CHECK(default_precision_bits() >= 64);
}

TEST_CASE("double-double phase accumulation stays exact") {
    // frac(alpha*m) via stepping vs direct MPFR reduction; the stepped value
    // reproduces frac(frac(alpha)*m), so compare against that
    Real alpha = Real::exp(Real::pi(192) * 2L);  // e^{2pi}
    Real fa = reduce_mod_one(alpha);
    DD step = dd_from_real(fa);
    DD ph{0, 0};
    for (int m = 1; m <= 2000; ++m) ph = dd_frac(dd_add(ph, step));
    // the dd start quantizes frac(alpha) to ~106 bits; account for it exactly
    Real start = Real(step.hi, 192) + Real(step.lo, 192);
    Real want = reduce_mod_one(start * 2000L);
    Real got = Real(ph.hi, 192) + Real(ph.lo, 192);
    Real diff = Real::abs(got - want);
    if (diff > Real(0.5, 192)) diff = Real::abs(diff - 1L);  // wrap-around
    CHECK(diff.to_double() < 1e-25);
}
