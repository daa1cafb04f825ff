// specfun.hpp
//
// Scalar special functions: Riemann zeta and its s-derivative, Hurwitz
// zeta(s, alpha) with derivative, Dirichlet L(s, chi) and L'(s, chi),
// li(x), digamma, and the Mertens constants by Moebius-zeta acceleration.
//
// The deflated Hurwitz function zeta*(s,alpha) = zeta(s,alpha) - 1/(s-1)
// is analytic at s = 1, so L-values of non-principal characters are
// computed directly at s = 1 (the subtracted poles cancel in the character
// sum). Everything here is pure and thread-safe.

#pragma once

#include <complex>
#include <utility>

#include "mertens/arith.hpp"
#include "mertens/dd.hpp"

namespace mertens::sf {

using cplx = std::complex<double>;

inline constexpr double kGammaE = 0.5772156649015329;
inline constexpr double kExpGamma = 1.781072417990198;
inline constexpr double kLog2 = 0.6931471805599453;
inline constexpr double kLi2 = 1.0451637801174928;       // li(2)
inline constexpr double kLogLog2 = -0.36651292058166433; // log log 2

// zeta*(s, alpha) and its s-derivative; alpha in (0,1], s > 0 (real) or
// Re s > 0 (complex). Euler-Maclaurin with >= 10 Bernoulli terms.
std::pair<double, double> hurwitz_deflated(double s, double alpha);
std::pair<cplx, cplx> hurwitz_deflated(cplx s, double alpha);

// zeta(s, alpha); rejects s == 1 (pole) and s <= 0.
double hurwitz_zeta(double s, double alpha);
double hurwitz_zeta_ds(double s, double alpha);

// Riemann zeta for real s > 1 (rejects s <= 1), and on the critical strip
// for complex s != 1.
double zeta(double s);
double zeta_prime(double s);
cplx zeta(cplx s);

// Principal-value logarithmic integral; x >= 0, x != 1.
double li(double x);

double digamma(double x);

struct MertensConstants {
    dd e1;            // -gamma - sum_p sum_{n>=2} log p / p^n = -1.3325...
    dd e2;            // gamma - sum_p sum_{n>=2} 1/(n p^n)   =  0.2614...
    dd gamma_e;
    dd b1;            // 2 + gamma - log 4 pi
    double e1_err, e2_err;
    double exp_gamma() const { return kExpGamma; }
};

const MertensConstants& mertens_constants();

struct LValuePoint {
    double s;
    double L, Lprime;
    double err;       // bound on the evaluation error of either value
};

struct LValuePointC {
    double s;
    cplx L, Lprime;
    double err;
};

// L(s, chi) and L'(s, chi) via the Hurwitz decomposition
// L(s,chi) = q^{-s} sum_a chi(a) zeta(s, a/q). chi must be primitive and
// non-principal; s = 1 is allowed. Real-character fast path.
LValuePoint dirichlet_l_real(double s, const arith::DirichletCharacter& chi);
LValuePointC dirichlet_l(double s, const arith::DirichletCharacter& chi);

// L(sigma + it, chi) for scans along vertical lines (chi primitive,
// non-principal).
cplx dirichlet_l_line(cplx s, const arith::DirichletCharacter& chi);

// L'/L(1, chi) with propagated error bound. Real-character form.
struct LogDeriv {
    double value;
    double err;
};
LogDeriv logderiv_l_at_1(const arith::DirichletCharacter& chi);
std::pair<cplx, double> logderiv_l_at_1_complex(const arith::DirichletCharacter& chi);

// Twisted Mertens constants for a fundamental discriminant:
//   E1(d) = -L'/L(1,chi_d) - sum_p sum_{n>=2} chi_d(p)^n log p / p^n
//   E2(d) = log L(1,chi_d) - sum_p sum_{n>=2} chi_d(p)^n / (n p^n)
// Prime-power parts by direct summation over p <= 1e6 with reported tails.
struct TwistedConstants {
    double e1, e2;
    double l1;              // L(1, chi_d)
    double logderiv;        // L'/L(1, chi_d)
    double tail1, tail2;    // bounds on the truncated prime-power tails
};
TwistedConstants twisted_constants(arith::i64 d);

} // namespace mertens::sf
