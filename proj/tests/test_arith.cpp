// test_arith.cpp

#include "doctest.h"
#include "mertens/arith.hpp"

#include <map>
#include <set>

using namespace mertens;
using namespace mertens::arith;

namespace {

// Brute-force quadratic-residue test: is a a nonzero square mod p?
int legendre_brute(i64 a, u64 p) {
    a %= (i64)p;
    if (a < 0) a += (i64)p;
    if (a == 0) return 0;
    for (u64 b = 1; b < p; ++b)
        if (b * b % p == (u64)a) return 1;
    return -1;
}

u64 c_count_brute(u64 q, u64 a) {
    u64 n = 0;
    for (u64 b = 1; b < q; ++b)
        if (b * b % q == a % q) ++n;
    return n;
}

} // namespace

TEST_CASE("kronecker basics") {
    CHECK(kronecker(5, 1) == 1);
    CHECK(kronecker(-4, 2) == 0);
    CHECK(kronecker(5, 2) == -1);  // squares mod 5 are {1,4}
    CHECK(kronecker(0, 1) == 1);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(-1, 0) == 1);
    CHECK(kronecker(7, 0) == 0);
}

TEST_CASE("kronecker agrees with Legendre for odd primes") {
    for (u64 p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        for (i64 d = -30; d <= 30; ++d) {
            if (d % (i64)p == 0) {
                CHECK(kronecker(d, p) == 0);
            } else {
                CHECK(kronecker(d, p) == legendre_brute(d, p));
            }
        }
    }
}

TEST_CASE("kronecker fully multiplicative in n") {
    for (i64 d : {5, -4, 12, -3, 21, -8}) {
        for (u64 m = 1; m <= 40; ++m)
            for (u64 n = 1; n <= 40; ++n)
                CHECK(kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n));
    }
}

TEST_CASE("is_fundamental") {
    CHECK(is_fundamental(5));
    CHECK(is_fundamental(-3));
    CHECK(is_fundamental(-4));
    CHECK(is_fundamental(8));
    CHECK(is_fundamental(-8));
    CHECK(is_fundamental(12));
    CHECK(is_fundamental(-1151));
    CHECK(is_fundamental(2161));
    CHECK_FALSE(is_fundamental(1));
    CHECK_FALSE(is_fundamental(6));   // 6 = 2 (mod 4)
    CHECK_FALSE(is_fundamental(-6));
    CHECK_FALSE(is_fundamental(9));   // square
    CHECK_FALSE(is_fundamental(25));
    CHECK_FALSE(is_fundamental(4));   // m = 1
    CHECK_FALSE(is_fundamental(16));
}

TEST_CASE("c_count matches brute force and the case formula") {
    CHECK(c_count(8, 1) == 4);
    CHECK(c_count(5, 4) == 2);
    CHECK(c_count(12, 1) == 4);
    CHECK_THROWS_AS(c_count(12, 2), PreconditionError);
    for (u64 q = 2; q <= 400; ++q) {
        for (u64 a = 1; a < q; ++a)
            if (gcd(a, q) == 1) CHECK(c_count(q, a) == c_count_brute(q, a));
    }
    for (u64 q = 2; q <= 5000; ++q)
        CHECK(c_count(q, 1) == c_count_one_formula(q));
}

TEST_CASE("primitive_count small values and brute force") {
    CHECK(primitive_count(1) == 1);
    CHECK(primitive_count(2) == 0);
    CHECK(primitive_count(5) == 3);
    CHECK(primitive_count(6) == 0);
    for (u64 q = 1; q <= 300; ++q) {
        auto grp = CharacterGroup::make(q);
        u64 brute = 0;
        for (u64 i = 0; i < grp->size(); ++i)
            if (grp->character(i).conductor() == q) ++brute;
        CHECK(primitive_count(q) == brute);
    }
}

TEST_CASE("character group structure") {
    auto g5 = CharacterGroup::make(5);
    CHECK(g5->size() == 4);
    u64 prim = 0, real_count = 0;
    for (auto& chi : g5->all()) {
        if (chi.is_primitive()) ++prim;
        if (chi.is_real()) ++real_count;
    }
    CHECK(prim == 3);
    CHECK(real_count == 2);  // principal + chi_5

    auto g8 = CharacterGroup::make(8);
    CHECK(g8->size() == 4);
    for (auto& chi : g8->all()) CHECK(chi.is_real());

    auto g1 = CharacterGroup::make(1);
    CHECK(g1->size() == 1);
    CHECK(g1->character(0).conductor() == 1);
}

TEST_CASE("orthogonality for q <= 100") {
    for (u64 q : {3ull, 4ull, 5ull, 7ull, 8ull, 9ull, 12ull, 15ull, 16ull, 24ull,
                  35ull, 36ull, 60ull, 72ull, 100ull}) {
        auto grp = CharacterGroup::make(q);
        auto chars = grp->all();
        for (u64 a = 1; a < q; ++a) {
            if (gcd(a, q) != 1) continue;
            for (u64 b = 1; b < q; ++b) {
                if (gcd(b, q) != 1) continue;
                double re = 0, im = 0;
                for (auto& chi : chars) {
                    auto va = chi.value(a), vb = chi.value(b);
                    // conj(chi(a)) * chi(b)
                    double ra = va->real(), ia = -va->imag();
                    double rb = vb->real(), ib = vb->imag();
                    re += ra * rb - ia * ib;
                    im += ra * ib + ia * rb;
                }
                re /= (double)chars.size();
                im /= (double)chars.size();
                CHECK(std::abs(re - (a == b ? 1.0 : 0.0)) < 1e-9);
                CHECK(std::abs(im) < 1e-9);
            }
        }
    }
}

TEST_CASE("conductor via brute force for q <= 120") {
    // chi is induced by a character mod f iff chi(u) = 1 whenever
    // u = 1 (mod f) and gcd(u, q) = 1.
    for (u64 q = 2; q <= 120; ++q) {
        auto grp = CharacterGroup::make(q);
        for (u64 i = 0; i < grp->size(); ++i) {
            auto chi = grp->character(i);
            u64 brute = 0;
            for (u64 f = 1; f <= q; ++f) {
                if (q % f != 0) continue;
                bool ok = true;
                for (u64 u = 1; u <= q && ok; ++u) {
                    if (gcd(u, q) != 1 || u % f != 1 % f) continue;
                    auto v = chi.value(u);
                    if (!v->is_one()) ok = false;
                }
                if (ok) { brute = f; break; }
            }
            CHECK(chi.conductor() == brute);
        }
    }
}

TEST_CASE("primitive inducing character agrees on coprime values") {
    for (u64 q : {12ull, 24ull, 40ull, 45ull, 56ull, 72ull}) {
        auto grp = CharacterGroup::make(q);
        for (u64 i = 0; i < grp->size(); ++i) {
            auto chi = grp->character(i);
            auto prim = chi.primitive();
            CHECK(prim.modulus() == chi.conductor());
            CHECK(prim.is_primitive());
            CHECK(prim.parity() == chi.parity());
            for (u64 n = 1; n <= q; ++n) {
                if (gcd(n, q) != 1) continue;
                auto v = chi.value(n), w = prim.value(n);
                REQUIRE(v.has_value());
                REQUIRE(w.has_value());
                CHECK(v->num * w->den == w->num * v->den);
            }
        }
    }
}

TEST_CASE("kronecker symbol is the real primitive character of conductor |d|") {
    for (i64 v = 2; v <= 1000; ++v) {
        for (i64 d : {v, -v}) {
            if (!is_fundamental(d)) continue;
            auto chi = CharacterGroup::kronecker_character(d);
            CHECK(chi.conductor() == (u64)(d < 0 ? -d : d));
            CHECK(chi.is_real());
            CHECK(chi.is_primitive());
            CHECK(chi.parity() == (d < 0 ? 1 : 0));
        }
    }
}

TEST_CASE("conjugate index") {
    auto g5 = CharacterGroup::make(5);
    for (u64 i = 0; i < g5->size(); ++i) {
        auto chi = g5->character(i);
        auto bar = g5->character(chi.conjugate_index());
        for (u64 n = 1; n < 5; ++n) {
            auto v = chi.value(n), w = bar.value(n);
            CHECK(std::abs(v->real() - w->real()) < 1e-15);
            CHECK(std::abs(v->imag() + w->imag()) < 1e-15);
        }
    }
}
