// arith.cpp

#include "mertens/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace mertens::arith {

namespace {

// Shared prime table to 10^6 (trial division support for q, |d| up to 10^12).
const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = [] {
        const u64 limit = 1'000'000;
        std::vector<bool> comp(limit + 1, false);
        std::vector<u64> ps;
        for (u64 i = 2; i <= limit; ++i) {
            if (!comp[i]) {
                ps.push_back(i);
                for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
            }
        }
        return ps;
    }();
    return primes;
}

u64 pow_u64(u64 b, int e) {
    u64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

u64 pow_mod(u64 b, u64 e, u64 m) {
    unsigned __int128 r = 1, base = b % m;
    while (e) {
        if (e & 1) r = r * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return (u64)r;
}

// Primitive root mod p^k for odd prime p. A primitive root mod p^2 is one
// for every higher power.
u64 primitive_root(u64 p, int k) {
    u64 phi_p = p - 1;
    auto fac = factorize(phi_p);
    auto is_pr_mod_p = [&](u64 g) {
        for (auto& [f, e] : fac)
            if (pow_mod(g, phi_p / f, p) == 1) return false;
        return true;
    };
    u64 g = 2;
    while (!is_pr_mod_p(g)) ++g;
    if (k == 1) return g;
    // lift: g or g+p generates mod p^2 (hence mod p^k)
    u64 p2 = p * p;
    if (pow_mod(g, p - 1, p2) == 1) g += p;
    return g;
}

} // namespace

const std::vector<u64>& primes_to_million() { return small_primes(); }

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

int kronecker(i64 d, u64 n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    i64 a = d;
    u64 m = n;
    int result = 1;
    // factor out 2s of n: (a|2) = 0 if a even, else +-1 by a mod 8
    while (m % 2 == 0) {
        m /= 2;
        if (a % 2 == 0) return 0;
        i64 r = ((a % 8) + 8) % 8;
        if (r == 3 || r == 5) result = -result;
    }
    if (m == 1) return result;
    // Jacobi symbol (a|m) for odd m > 1; reduction mod m is exact
    a %= (i64)m;
    if (a < 0) a += (i64)m;
    u64 b = (u64)a;
    u64 mm = m;
    while (b != 0) {
        while (b % 2 == 0) {
            b /= 2;
            u64 r = mm % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(b, mm);
        if (b % 4 == 3 && mm % 4 == 3) result = -result;
        b %= mm;
    }
    return mm == 1 ? result : 0;
}

std::vector<std::pair<u64, int>> factorize(u64 q) {
    std::vector<std::pair<u64, int>> out;
    for (u64 p : small_primes()) {
        if (p * p > q) break;
        if (q % p == 0) {
            int e = 0;
            while (q % p == 0) { q /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (q > 1) out.emplace_back(q, 1);
    return out;
}

bool is_squarefree_abs(i64 d) {
    u64 n = (u64)(d < 0 ? -d : d);
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

bool is_fundamental(i64 d) {
    if (d == 0 || d == 1) return false;
    i64 mod4 = ((d % 4) + 4) % 4;
    if (mod4 == 1) return is_squarefree_abs(d);
    if (mod4 == 0) {
        i64 m = d / 4;
        i64 m4 = ((m % 4) + 4) % 4;
        return (m4 == 2 || m4 == 3) && is_squarefree_abs(m);
    }
    return false;
}

u64 phi(u64 q) {
    u64 r = q;
    for (auto& [p, e] : factorize(q)) r = r / p * (p - 1);
    return r;
}

u64 c_count(u64 q, u64 a) {
    if (q <= 1) throw PreconditionError("c_count: q must exceed 1");
    a %= q;
    if (gcd(a, q) != 1) throw PreconditionError("c_count: gcd(a,q) != 1");
    // multiplicative over prime powers
    u64 total = 1;
    for (auto& [p, e] : factorize(q)) {
        u64 pk = pow_u64(p, e);
        u64 ar = a % pk;
        u64 cnt;
        if (p == 2) {
            if (e == 1) cnt = 1;
            else if (e == 2) cnt = (ar % 4 == 1) ? 2 : 0;
            else cnt = (ar % 8 == 1) ? 4 : 0;
        } else {
            cnt = (kronecker((i64)ar, p) == 1) ? 2 : 0;
        }
        if (cnt == 0) return 0;
        total *= cnt;
    }
    return total;
}

u64 c_count_one_formula(u64 q) {
    int nu2 = 0, omega = 0;
    for (auto& [p, e] : factorize(q)) {
        ++omega;
        if (p == 2) nu2 = e;
    }
    if (nu2 == 0 || nu2 == 2) return pow_u64(2, omega);
    if (nu2 == 1) return pow_u64(2, omega - 1);
    return pow_u64(2, omega + 1);
}

u64 primitive_count(u64 q) {
    if (q == 1) return 1;  // the trivial character has conductor 1
    u64 n = 1;
    for (auto& [p, e] : factorize(q)) {
        if (e == 1) {
            if (p == 2) return 0;  // q = 2 (mod 4) has no primitive character
            n *= p - 2;
        } else {
            u64 pk = pow_u64(p, e);
            n *= pk / (p * p) * (p - 1) * (p - 1);
        }
    }
    return n;
}

double RootOfUnity::real() const {
    if (num == 0) return 1.0;
    if (2 * num == den) return -1.0;
    return std::cos(2.0 * M_PI * (double)num / (double)den);
}

double RootOfUnity::imag() const {
    if (num == 0 || 2 * num == den) return 0.0;
    return std::sin(2.0 * M_PI * (double)num / (double)den);
}

std::shared_ptr<const CharacterGroup> CharacterGroup::make(u64 q) {
    auto g = std::make_shared<CharacterGroup>(CharacterGroup{});
    g->q_ = q;
    g->phi_ = phi(q);
    for (auto& [p, e] : factorize(q)) {
        u64 pk = pow_u64(p, e);
        if (p == 2) {
            if (e == 1) continue;  // trivial factor
            if (e == 2) {
                CyclicFactor f;
                f.order = 2;
                f.prime = 2;
                f.prime_exp = 2;
                f.is_sign_part = true;
                f.dlog.assign(q, -1);
                for (u64 r = 1; r < q; r += 2) f.dlog[r] = (r % 4 == 3) ? 1 : 0;
                g->factors_.push_back(std::move(f));
            } else {
                // (Z/2^e)^x = <-1> x <5>
                CyclicFactor sign, five;
                sign.order = 2;
                sign.prime = five.prime = 2;
                sign.prime_exp = five.prime_exp = e;
                sign.is_sign_part = true;
                five.is_sign_part = false;
                five.order = pk >> 2;
                sign.dlog.assign(q, -1);
                five.dlog.assign(q, -1);
                // enumerate (-1)^s * 5^t mod 2^e
                u64 v = 1;
                for (u64 t = 0; t < five.order; ++t) {
                    u64 w1 = v % pk, w2 = pk - w1;
                    for (u64 r = w1; r < q; r += pk) { sign.dlog[r] = 0; five.dlog[r] = (i64)t; }
                    for (u64 r = w2; r < q; r += pk) { sign.dlog[r] = 1; five.dlog[r] = (i64)t; }
                    v = v * 5 % pk;
                }
                g->factors_.push_back(std::move(sign));
                g->factors_.push_back(std::move(five));
            }
        } else {
            CyclicFactor f;
            f.order = pk / p * (p - 1);
            f.prime = p;
            f.prime_exp = e;
            f.is_sign_part = false;
            f.dlog.assign(q, -1);
            u64 gen = primitive_root(p, e);
            u64 v = 1;
            for (u64 t = 0; t < f.order; ++t) {
                for (u64 r = v % pk; r < q; r += pk)
                    if (gcd(r, pk) == 1 || pk == 1) f.dlog[r] = (i64)t;
                v = (u64)((unsigned __int128)v * gen % pk);
            }
            // dlog indexed by residue mod q; mark non-units of q later via value()
            g->factors_.push_back(std::move(f));
        }
    }
    g->lambda_ = 1;
    for (auto& f : g->factors_) g->lambda_ = std::lcm(g->lambda_, f.order);
    return g;
}

DirichletCharacter CharacterGroup::character(u64 index) const {
    DirichletCharacter chi;
    chi.group_ = shared_from_this();
    chi.q_ = q_;
    chi.index_ = index;
    chi.exponents_.resize(factors_.size());
    // mixed-radix decomposition, last factor fastest
    u64 rem = index;
    for (size_t j = factors_.size(); j-- > 0;) {
        chi.exponents_[j] = rem % factors_[j].order;
        rem /= factors_[j].order;
    }
    annotate(chi);
    return chi;
}

std::vector<DirichletCharacter> CharacterGroup::all() const {
    std::vector<DirichletCharacter> out;
    out.reserve(phi_);
    for (u64 i = 0; i < phi_; ++i) out.push_back(character(i));
    return out;
}

void CharacterGroup::annotate(DirichletCharacter& chi) const {
    // order = lcm of component orders; reality: all component values in {1,-1}
    u64 ord = 1;
    bool real = true;
    for (size_t j = 0; j < factors_.size(); ++j) {
        u64 n = factors_[j].order, e = chi.exponents_[j];
        u64 m = n / std::gcd(n, e);
        ord = std::lcm(ord, m);
        if (2 * e % n != 0) real = false;
    }
    chi.order_ = ord;
    chi.is_real_ = real;

    // conductor: multiplicative over prime-power components
    u64 cond = 1;
    u64 two_cond = 1;
    bool sign_nontrivial = false;
    u64 five_m = 1;
    for (size_t j = 0; j < factors_.size(); ++j) {
        const auto& f = factors_[j];
        u64 n = f.order, e = chi.exponents_[j];
        u64 m = n / std::gcd(n, e);  // order of this component
        if (f.prime == 2) {
            if (f.prime_exp == 2) {
                if (m > 1) two_cond = 4;
            } else if (f.is_sign_part) {
                sign_nontrivial = (m > 1);
            } else {
                five_m = m;
            }
        } else {
            if (m > 1) {
                // m = p^s * t with t | p-1; conductor exponent s+1
                u64 ps = 1;
                u64 mm = m;
                while (mm % f.prime == 0) { mm /= f.prime; ps *= f.prime; }
                cond *= f.prime * ps;
            }
        }
    }
    if (five_m > 1)
        two_cond = 4 * five_m;
    else if (sign_nontrivial)
        two_cond = std::max<u64>(two_cond, 4);
    cond *= two_cond;
    chi.conductor_ = cond;

    // parity from chi(-1)
    if (q_ <= 2) {
        chi.kappa_ = 0;
    } else {
        auto v = chi.value(q_ - 1);
        chi.kappa_ = (v && v->is_one()) ? 0 : 1;
    }
}

std::optional<RootOfUnity> DirichletCharacter::value(u64 n) const {
    if (q_ == 1) return RootOfUnity{0, 1};
    n %= q_;
    if (gcd(n, q_) != 1) return std::nullopt;
    const auto& factors = group_->factors_;
    u64 L = group_->lambda_;
    u64 acc = 0;
    for (size_t j = 0; j < factors.size(); ++j) {
        i64 t = factors[j].dlog[n];
        u64 nj = factors[j].order;
        acc = (acc + (unsigned __int128)exponents_[j] * (u64)t % L * (L / nj)) % L;
    }
    u64 g = std::gcd(acc, L);
    if (acc == 0) return RootOfUnity{0, 1};
    return RootOfUnity{(i64)(acc / g), (i64)(L / g)};
}

int DirichletCharacter::real_value(u64 n) const {
    auto v = value(n);
    if (!v) return 0;
    return v->is_one() ? 1 : -1;
}

DirichletCharacter DirichletCharacter::primitive() const {
    if (is_primitive()) return *this;
    auto fgrp = CharacterGroup::make(conductor_);
    // map exponents componentwise: e' = e * order'(component) / order(component)
    DirichletCharacter chi;
    chi.group_ = fgrp;
    chi.q_ = conductor_;
    chi.exponents_.assign(fgrp->factors_.size(), 0);
    for (size_t j = 0; j < fgrp->factors_.size(); ++j) {
        const auto& tf = fgrp->factors_[j];
        // find matching source factor: same prime and same sign-part flag
        for (size_t i = 0; i < group_->factors_.size(); ++i) {
            const auto& sf = group_->factors_[i];
            if (sf.prime != tf.prime) continue;
            if (sf.prime == 2 && group_->factors_.size() > 0) {
                // match sign part to sign part, 5-part to 5-part; a mod-4
                // target factor (prime_exp == 2) takes the source sign part
                bool tf_sign = tf.is_sign_part;
                bool sf_sign = sf.is_sign_part;
                if (tf.prime_exp == 2 && sf.prime_exp >= 3) {
                    if (!sf_sign) continue;
                } else if (tf_sign != sf_sign) {
                    continue;
                }
            }
            chi.exponents_[j] = exponents_[i] * tf.order / sf.order;
            break;
        }
    }
    fgrp->annotate(chi);
    // recompute index from exponents (mixed radix)
    u64 idx = 0;
    for (size_t j = 0; j < fgrp->factors_.size(); ++j)
        idx = idx * fgrp->factors_[j].order + chi.exponents_[j];
    chi.index_ = idx;
    return chi;
}

u64 DirichletCharacter::conjugate_index() const {
    u64 idx = 0;
    for (size_t j = 0; j < group_->factors_.size(); ++j) {
        u64 n = group_->factors_[j].order;
        u64 e = exponents_[j] == 0 ? 0 : n - exponents_[j];
        idx = idx * n + e;
    }
    return idx;
}

DirichletCharacter CharacterGroup::kronecker_character(i64 d) {
    if (!is_fundamental(d)) throw PreconditionError("kronecker_character: d not fundamental");
    u64 q = (u64)(d < 0 ? -d : d);
    auto grp = make(q);
    // identify by matching values on a few small primes, then confirm fully
    for (u64 i = 0; i < grp->size(); ++i) {
        DirichletCharacter chi = grp->character(i);
        if (!chi.is_real() || !chi.is_primitive()) continue;
        bool match = true;
        for (u64 n = 1; n <= q && match; ++n) {
            int kv = kronecker(d, n);
            if (chi.real_value(n) != kv) match = false;
        }
        if (match) return chi;
    }
    throw PreconditionError("kronecker_character: no matching character (d not fundamental?)");
}

} // namespace mertens::arith
