// specfun.cpp

#include "mertens/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace mertens::sf {

namespace {

// B_{2k} for k = 1..15
const double kBern2k[] = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0,
    8553103.0 / 6.0, -23749461029.0 / 870.0, 8615841276005.0 / 14322.0};

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// phi1(z) = (e^z - 1)/z and its derivative, stable near z = 0.
template <typename S>
void phi1(S z, S& val, S& der) {
    if (std::abs(z) < 0.5) {
        val = S(1);
        der = S(0.5);
        S term(1);
        double fact = 1;
        for (int m = 1; m <= 18; ++m) {
            term *= z;
            fact *= (m + 1);
            val += term / fact;
            der += term * (double(m + 1) / (fact * (m + 2)));
        }
    } else {
        S em1 = std::exp(z) - S(1);
        val = em1 / z;
        der = (std::exp(z) - val) / z;
    }
}

template <typename S>
std::pair<S, S> hurwitz_deflated_impl(S s, double alpha) {
    double t = 0;
    if constexpr (std::is_same_v<S, cplx>) t = std::abs(s.imag());
    const int K = 13;
    const int N = std::max(20, (int)std::ceil(0.23 * t) + 2 * K + 4);

    S sum(0), dsum(0);
    for (int n = 0; n < N; ++n) {
        double w = std::log(n + alpha);
        S p = std::exp(-s * w);
        sum += p;
        dsum += p * (-w);
    }

    const double w = std::log(N + alpha);
    // [(N+alpha)^{1-s} - 1]/(s-1) = -w * phi1((1-s) w); d/ds = +w^2 phi1'
    S x = S(1) - s;
    S f, fd;
    phi1(x * w, f, fd);
    S pole_term = f * (-w);
    S dpole = fd * (w * w);

    S p0 = std::exp(-s * w);  // (N+alpha)^{-s}
    sum += p0 * 0.5;
    dsum += p0 * (-0.5 * w);

    // Bernoulli tail: sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * (N+a)^{-s-2k+1}
    S pk = p0 / (N + alpha);        // (N+alpha)^{-s-1}
    S dpk = pk * (-w);
    const double inv2 = 1.0 / ((double)(N + alpha) * (N + alpha));
    S poch = s;                     // rising product
    S poch_logsum = S(1) / s;       // sum of 1/(s+j), for the derivative
    for (int k = 1; k <= K; ++k) {
        double c = kBern2k[k - 1] / factorial(2 * k);
        // term = c * poch * pk_shift where pk_shift = (N+a)^{-s-2k+1}
        S t1 = poch * pk * c;
        sum += t1;
        dsum += (poch_logsum * poch * pk + poch * dpk) * c;
        if (k < K) {
            S a1 = s + double(2 * k - 1), a2 = s + double(2 * k);
            poch_logsum += S(1) / a1 + S(1) / a2;
            poch *= a1 * a2;
            pk *= inv2;
            dpk = pk * (-w);
        }
    }

    return {sum + pole_term, dsum + dpole};
}

} // namespace

std::pair<double, double> hurwitz_deflated(double s, double alpha) {
    if (s <= 0) throw PreconditionError("hurwitz_deflated: require s > 0");
    if (!(alpha > 0) || alpha > 1) throw PreconditionError("hurwitz_deflated: alpha in (0,1]");
    return hurwitz_deflated_impl<double>(s, alpha);
}

std::pair<cplx, cplx> hurwitz_deflated(cplx s, double alpha) {
    if (s.real() <= 0) throw PreconditionError("hurwitz_deflated: require Re s > 0");
    if (!(alpha > 0) || alpha > 1) throw PreconditionError("hurwitz_deflated: alpha in (0,1]");
    return hurwitz_deflated_impl<cplx>(s, alpha);
}

double hurwitz_zeta(double s, double alpha) {
    if (s == 1.0) throw PreconditionError("hurwitz_zeta: pole at s = 1");
    return hurwitz_deflated(s, alpha).first + 1.0 / (s - 1.0);
}

double hurwitz_zeta_ds(double s, double alpha) {
    if (s == 1.0) throw PreconditionError("hurwitz_zeta_ds: pole at s = 1");
    return hurwitz_deflated(s, alpha).second - 1.0 / ((s - 1.0) * (s - 1.0));
}

double zeta(double s) {
    if (s <= 1.0) throw PreconditionError("zeta: require s > 1");
    return hurwitz_zeta(s, 1.0);
}

double zeta_prime(double s) {
    if (s <= 1.0) throw PreconditionError("zeta_prime: require s > 1");
    return hurwitz_zeta_ds(s, 1.0);
}

cplx zeta(cplx s) {
    if (s == cplx(1.0)) throw PreconditionError("zeta: pole at s = 1");
    auto [v, d] = hurwitz_deflated(s, 1.0);
    (void)d;
    return v + 1.0 / (s - 1.0);
}

namespace {

// E1(x) for x >= 4 by modified Lentz continued fraction.
double expint_e1_cf(double x) {
    const double tiny = 1e-300;
    double b = x + 1.0, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 200; ++i) {
        double a = -(double)i * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        if (c == 0) c = tiny;
        double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return h * std::exp(-x);
}

} // namespace

double li(double x) {
    if (x == 0.0) return 0.0;
    if (x < 0.0) throw PreconditionError("li: require x >= 0");
    if (x == 1.0) throw PreconditionError("li: singular at x = 1");
    double y = std::log(x);
    if (y < -4.0) return -expint_e1_cf(-y);
    // Ei(y) = gamma + log|y| + sum y^k/(k k!)
    double sum = 0.0, term = 1.0;
    for (int k = 1; k <= 200; ++k) {
        term *= y / k;
        double add = term / k;
        sum += add;
        if (std::abs(add) < 1e-18 * std::max(1.0, std::abs(sum)) && k > 4) break;
    }
    return kGammaE + std::log(std::abs(y)) + sum;
}

double digamma(double x) {
    if (x <= 0.0) throw PreconditionError("digamma: require x > 0");
    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    double r = std::log(x) - 0.5 * inv;
    // - sum B_{2k}/(2k) x^{-2k}
    double p = inv2;
    static const double coef[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                                  1.0 / 132, -691.0 / 32760, 1.0 / 12};
    for (double c : coef) {
        r -= c * p;
        p *= inv2;
    }
    return r + acc;
}

namespace {

int mobius(int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    }
    if (n > 1) m = -m;
    return m;
}

// log zeta(m) for integer m >= 2. Euler-Maclaurin below 40; above, the
// direct series for zeta(m) - 1 converges to full precision in a few terms.
double log_zeta_int(int m) {
    if (m > 1070) return 0.0;
    if (m <= 40) return std::log(zeta((double)m));
    double zm1 = 0.0;
    for (int n = 2; n <= 12; ++n) zm1 += std::pow((double)n, -(double)m);
    return std::log1p(zm1);
}

// zeta'(m)/zeta(m) = -sum Lambda(n)/n^m, m >= 2.
double zeta_logderiv_int(int m) {
    if (m > 1070) return 0.0;
    if (m <= 40) return zeta_prime((double)m) / zeta((double)m);
    double s = 0.0;
    static const int pp[] = {2, 3, 4, 5, 7, 8, 9, 11, 13};
    static const int lg[] = {2, 3, 2, 5, 7, 2, 3, 11, 13};
    for (size_t i = 0; i < sizeof(pp) / sizeof(pp[0]); ++i)
        s -= std::log((double)lg[i]) * std::pow((double)pp[i], -(double)m);
    return s;
}

} // namespace

const MertensConstants& mertens_constants() {
    static const MertensConstants mc = [] {
        MertensConstants m;
        m.gamma_e = ddc::gamma_e;
        m.b1 = dd(2.0) + ddc::gamma_e - ddc::log_4pi;

        // E2 = gamma + sum_{n>=2} mu(n)/n log zeta(n)
        dd e2 = ddc::gamma_e;
        for (int n = 2; n <= 90; ++n) {
            int mu = mobius(n);
            if (mu) e2 += (double)mu / n * log_zeta_int(n);
        }
        m.e2 = e2;
        m.e2_err = 1e-14;

        // E1 = -gamma - sum_{k>=2} P'(k), P'(k) = sum_p log p p^{-k}
        //                                       = -sum_n mu(n) zeta'(nk)/zeta(nk)
        dd e1 = -ddc::gamma_e;
        for (int k = 2; k <= 130; ++k) {
            double pk = 0.0;
            for (int n = 1; n * k <= 1100; ++n) {
                int mu = mobius(n);
                if (mu) pk -= mu * zeta_logderiv_int(n * k);
            }
            e1 -= pk;
            if (pk < 1e-22) break;
        }
        m.e1 = e1;
        m.e1_err = 1e-14;
        return m;
    }();
    return mc;
}

LValuePoint dirichlet_l_real(double s, const arith::DirichletCharacter& chi) {
    if (chi.is_principal()) throw PreconditionError("dirichlet_l: principal character (pole at s=1)");
    if (!chi.is_primitive()) throw PreconditionError("dirichlet_l: character must be primitive");
    if (!chi.is_real()) throw PreconditionError("dirichlet_l_real: character is complex");
    const auto q = chi.modulus();
    dd L(0.0), Ld(0.0);
    for (arith::u64 a = 1; a <= q; ++a) {
        int v = chi.real_value(a);
        if (v == 0) continue;
        auto [z, zd] = hurwitz_deflated(s, (double)a / (double)q);
        L += v > 0 ? z : -z;
        Ld += v > 0 ? zd : -zd;
    }
    double lq = std::log((double)q);
    double scale = std::exp(-s * lq);
    LValuePoint out;
    out.s = s;
    out.L = scale * L.to_double();
    out.Lprime = scale * (Ld.to_double() - lq * L.to_double());
    out.err = 2e-15 * (double)q * (1.0 + std::abs(lq));
    return out;
}

LValuePointC dirichlet_l(double s, const arith::DirichletCharacter& chi) {
    if (chi.is_real()) {
        auto r = dirichlet_l_real(s, chi);
        return {s, cplx(r.L), cplx(r.Lprime), r.err};
    }
    if (chi.is_principal()) throw PreconditionError("dirichlet_l: principal character (pole at s=1)");
    if (!chi.is_primitive()) throw PreconditionError("dirichlet_l: character must be primitive");
    const auto q = chi.modulus();
    cplx L(0), Ld(0);
    for (arith::u64 a = 1; a <= q; ++a) {
        auto v = chi.value(a);
        if (!v) continue;
        cplx cv(v->real(), v->imag());
        auto [z, zd] = hurwitz_deflated(s, (double)a / (double)q);
        L += cv * z;
        Ld += cv * zd;
    }
    double lq = std::log((double)q);
    double scale = std::exp(-s * lq);
    return {s, scale * L, scale * (Ld - lq * L), 3e-15 * (double)q * (1.0 + std::abs(lq))};
}

cplx dirichlet_l_line(cplx s, const arith::DirichletCharacter& chi) {
    if (chi.is_principal()) throw PreconditionError("dirichlet_l_line: principal character");
    if (!chi.is_primitive()) throw PreconditionError("dirichlet_l_line: character must be primitive");
    const auto q = chi.modulus();
    cplx L(0);
    for (arith::u64 a = 1; a <= q; ++a) {
        auto v = chi.value(a);
        if (!v) continue;
        cplx cv(v->real(), v->imag());
        L += cv * hurwitz_deflated(s, (double)a / (double)q).first;
    }
    return std::exp(-s * std::log((double)q)) * L;
}

LogDeriv logderiv_l_at_1(const arith::DirichletCharacter& chi) {
    auto p = dirichlet_l_real(1.0, chi);
    double v = p.Lprime / p.L;
    double err = p.err * (1.0 + std::abs(v)) / std::abs(p.L);
    return {v, err};
}

std::pair<cplx, double> logderiv_l_at_1_complex(const arith::DirichletCharacter& chi) {
    auto p = dirichlet_l(1.0, chi);
    cplx v = p.Lprime / p.L;
    double err = p.err * (1.0 + std::abs(v)) / std::abs(p.L);
    return {v, err};
}

TwistedConstants twisted_constants(arith::i64 d) {
    if (!arith::is_fundamental(d)) throw PreconditionError("twisted_constants: d not fundamental");
    auto chi = arith::CharacterGroup::kronecker_character(d);
    auto lp = dirichlet_l_real(1.0, chi);

    const arith::u64 P = 1'000'000;
    dd s1(0.0), s2(0.0);
    for (arith::u64 p : arith::primes_to_million()) {
        if (p > P) break;
        int c = arith::kronecker(d, p);
        if (c == 0) continue;
        double ip = 1.0 / (double)p, lg = std::log((double)p);
        double pw = ip;  // chi^1/p^1 handled by main terms; start at n = 2
        double t1 = 0.0, t2 = 0.0;
        double cn = (double)c;
        for (int n = 2; n <= 64; ++n) {
            pw *= ip;
            cn *= c;
            t1 += cn * pw;
            t2 += cn * pw / n;
            if (pw < 1e-19) break;
        }
        s1 += t1 * lg;
        s2 += t2;
    }
    TwistedConstants out;
    out.l1 = lp.L;
    out.logderiv = lp.Lprime / lp.L;
    out.e1 = -out.logderiv - s1.to_double();
    out.e2 = std::log(lp.L) - s2.to_double();
    out.tail1 = (std::log((double)P) + 1.0) / (double)P;
    out.tail2 = 1.0 / (double)P;
    return out;
}

} // namespace mertens::sf
