#include "apzeta/numerics.hpp"

#include <stdexcept>

namespace apzeta {

double reduce_mod_one(double x) {
    if (!std::isfinite(x)) throw std::domain_error("reduce_mod_one: non-finite input");
    double r = x - std::floor(x);  // exact for every finite double
    if (r >= 1.0) r -= 1.0;
    if (r < 0.0) r += 1.0;
    return r;
}

Real reduce_mod_one(const Real& x) {
    if (!x.is_finite()) throw std::domain_error("reduce_mod_one: non-finite input");
    Real r = x - Real::floor(x);
    if (r.sign() < 0) r = r + 1L;
    if (!(r < Real(1.0))) r = r - 1L;
    return r;
}

Reduced reduce_mod_one_err(double x) {
    return {reduce_mod_one(x), std::abs(x) * 0x1p-52};
}

Reduced reduce_mod_one_err(const Real& x) {
    Real r = reduce_mod_one(x);
    Real bound = Real::abs(x);
    mpfr_mul_2si(bound.raw(), bound.raw(), 1 - x.precision(), MPFR_RNDU);
    return {r.to_double(), bound.to_double()};
}

double dist_to_nearest_int(double x) {
    if (!std::isfinite(x)) throw std::domain_error("dist_to_nearest_int: non-finite input");
    return std::abs(x - std::nearbyint(x));
}

std::complex<double> e_of(double x) {
    double r = reduce_mod_one(x);
    double a = 2.0 * M_PI * r;
    return {std::cos(a), std::sin(a)};
}

ComplexReal e_of(const Real& x) {
    if (!x.is_finite()) throw std::domain_error("e_of: non-finite input");
    int p = x.precision();
    Real r = reduce_mod_one(x);
    Real angle = Real::pi(p) * 2L * r;
    Real s, c;
    Real::sin_cos(angle, s, c);
    return {c, s};
}

DD dd_from_real(const Real& x) {
    double hi = x.to_double();
    Real rest = x - Real(hi, x.precision());
    return {hi, rest.to_double()};
}

}  // namespace apzeta
