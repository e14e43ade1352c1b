#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "apzeta/real.hpp"

namespace apzeta {

// Certified continued-fraction prefix of a positive real. The input value is
// treated as the center of its +-ulp interval; partial quotients are emitted
// only while both interval endpoints agree, so every emitted quotient (and
// convergent) is correct for the underlying number.
struct ContinuedFraction {
    std::vector<mpz_class> quotients;  // a0, a1, ...
    std::vector<std::pair<mpz_class, mpz_class>> convergents;  // (p_i, q_i), reduced
    int certified_terms = 0;           // == quotients.size()
    bool exhausted = false;            // interval pinned a rational exactly
};

// A value too coarse to certify what was asked of it.
class PrecisionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

ContinuedFraction continued_fraction(const Real& alpha, int n_terms);
// Optionally certify against a coarser precision than alpha carries.
ContinuedFraction continued_fraction(const Real& alpha, int n_terms, int working_precision);

// Dirichlet approximation: coprime p/q with q <= sqrt(M) and
// |alpha - p/q| <= 1/(q sqrt(M)), chosen with the largest such q among the
// convergents and intermediate fractions of alpha.
struct RationalApprox {
    mpz_class p;
    mpz_class q;
    double err;      // certified upper bound on |alpha - p/q|
    std::uint64_t M;
};

RationalApprox dirichlet_approx(const Real& alpha, std::uint64_t M);

// The progression t = a n + b. The rational-power form declares
// a = 2 pi k0 / log(r/s) symbolically; the spacing is materialized at any
// requested precision so e^{2 pi k/a} = (r/s)^(k/k0) stays exact when k0 | k.
class ProgressionSpec {
  public:
    enum class Form { generic, rational_power };

    ProgressionSpec() = default;  // generic spacing a = 1, b = 0
    static ProgressionSpec generic(Real a, double b);
    static ProgressionSpec rational_power(std::int64_t r, std::int64_t s, int k0, double b);

    Form form() const { return form_; }
    double b() const { return b_; }
    Real spacing(int bits = 0) const;  // a
    double spacing_d() const;
    std::int64_t r() const { return r_; }
    std::int64_t s() const { return s_; }
    int k0() const { return k0_; }

  private:
    Form form_ = Form::generic;
    Real a_generic_ = Real(1.0);
    double b_ = 0;
    std::int64_t r_ = 0, s_ = 0;
    int k0_ = 0;
};

// Per-k rationality report for the spacing exponentials e^{2 pi k / a}.
struct SpacingEntry {
    int k = 0;
    bool rational = false;
    mpz_class num, den;                  // exact (r/s)^(k/k0) when rational
    std::optional<RationalApprox> best;  // Dirichlet approximant otherwise
};

struct SpacingClassification {
    std::vector<SpacingEntry> entries;
    // maximal l with r/s = (x/y)^l, from exact perfect-power decomposition
    int power_l = 1;
    mpz_class x, y;
};

SpacingClassification classify_spacing(const ProgressionSpec& spec, int k_max,
                                       double T_for_generic = 1e4);

// Waldschmidt's effective lower bound
//   |e^{pi k/a} - p/q| > exp{ -2^72 (log 2k)(log 2a)(log p)(log log p) },
// stored on the log scale (the bound itself underflows every float format).
struct WaldschmidtBound {
    std::int64_t k = 0;
    std::int64_t a = 0;
    mpz_class p;
    double log_bound = 0;  // log of the right-hand side, always negative
};

WaldschmidtBound waldschmidt_floor(std::int64_t k, std::int64_t a, const mpz_class& p);

// Smallest admissible log p so that approximations of quality
// e^{pi k/a} / sqrt(T) are not ruled out by the bound; solves
// (log p)(log log p) = (log sqrt(T) - pi k/a) / (2^72 log 2k log 2a).
double waldschmidt_logp_floor(double T, std::int64_t k, std::int64_t a);

}  // namespace apzeta
