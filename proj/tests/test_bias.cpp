// test_bias.cpp

#include <cmath>

#include "doctest.h"
#include "mertens/bias.hpp"

using namespace mertens;
using namespace mertens::bias;

TEST_CASE("b1 closed form and localization ratio") {
    CHECK(std::abs(b1_value() - 0.04619141793224207) < 1e-14);
    CHECK(std::abs(b1_localization_ratio() - 0.9548513227771033) < 1e-12);
    // the displayed constant 0.9548... is the ratio; its square is 0.9117...
    double r = b1_localization_ratio();
    CHECK(std::abs(r * r - 0.9117410486091839) < 1e-12);
}

TEST_CASE("b1 zero-sum bracket contains the closed form") {
    auto zl = zeros::zeta_zero_scan(400.0);
    auto br = b1_zero_sum(zl);
    CHECK(br.contains(b1_value()));
    CHECK(br.width() < 1e-3);
}

TEST_CASE("b_chi reproduces table anchor values") {
    CHECK(std::abs(b_chi(5).value.mid() - 0.156557) < 5e-5);
    CHECK(std::abs(b_chi(-3).value.mid() - 0.113230) < 5e-5);
    CHECK(std::abs(b_chi(-4).value.mid() - 0.155568) < 5e-5);
    CHECK(std::abs(b_chi(1201).value.mid() - 1.950699) < 5e-4);
    CHECK_THROWS_AS(b_chi(6), PreconditionError);
}

TEST_CASE("two-route agreement for |d| <= 50") {
    for (long long v = 3; v <= 50; ++v) {
        for (long long d : {v, -v}) {
            if (!arith::is_fundamental(d)) continue;
            auto closed = b_chi(d);
            auto zl = zeros::l_zero_scan(d, 80.0);
            REQUIRE_FALSE(zl.suspected_missing);
            auto zs = b_chi_zero_sum(zl);
            CHECK(zs.lo <= closed.value.mid());
            CHECK(closed.value.mid() <= zs.hi);
        }
    }
}

TEST_CASE("b_q reductions and samples") {
    // q = 2: no non-principal characters
    CHECK(std::abs(b_q(2).value.mid() - b1_value()) < 1e-14);
    // q = 2 (mod 4) reduces to q/2
    CHECK(b_q(6).value.mid() == doctest::Approx(b_q(3).value.mid()).epsilon(1e-14));
    CHECK(b_q(10).value.mid() == doctest::Approx(b_q(5).value.mid()).epsilon(1e-14));
    // B_3 = B_1 + B_chi(-3), B_4 = B_1 + B_chi(-4)
    CHECK(std::abs(b_q(3).value.mid() - (b1_value() + b_chi(-3).value.mid())) < 1e-10);
    CHECK(std::abs(b_q(4).value.mid() - (b1_value() + b_chi(-4).value.mid())) < 1e-10);
    // B_24 is the sum over the seven real non-principal conductors
    double expect24 = b1_value() + b_chi(-3).value.mid() + b_chi(-4).value.mid() +
                      b_chi(8).value.mid() + b_chi(-8).value.mid() + b_chi(12).value.mid() +
                      b_chi(24).value.mid() + b_chi(-24).value.mid();
    CHECK(std::abs(b_q(24).value.mid() - expect24) < 1e-9);
    // q = 60 well inside the modulus set
    auto b60 = b_q(60);
    CHECK(b60.value.hi < 16.0);
    // q = 11 excluded: its bracket exceeds 2 C(11,1) = 4
    auto b11 = b_q(11);
    CHECK(b11.value.lo > 4.0);
}

TEST_CASE("quadratic field check") {
    auto c5 = quadratic_field_check(5);
    CHECK(c5.verdict);
    CHECK(std::abs(c5.combined - (b1_value() + 0.156557)) < 1e-4);
    auto c1201 = quadratic_field_check(1201);
    CHECK(c1201.verdict);
    auto cbig = quadratic_field_check(-1155);  // B > 2 outside the set
    CHECK_FALSE(cbig.verdict);
}

TEST_CASE("modulus certificate reproduces the cutoff logic") {
    for (arith::u64 q : {2041ull, 2043ull, 2048ull, 3001ull, 5000ull}) {
        auto c = modulus_certificate(q);
        CHECK(c.n_over_c > 3.0);
        CHECK(c.integral > 2.0 / 3.0);
        CHECK(c.excludes);
    }
    CHECK_THROWS_AS(modulus_certificate(2042), PreconditionError);  // 2 mod 4
}

TEST_CASE("discriminant certificate at the published threshold") {
    auto below = discriminant_certificate(400001, 0.928);
    CHECK_FALSE(below.excludes);
    auto at = discriminant_certificate(-460003, 0.928);
    CHECK(at.excludes);
    auto far = discriminant_certificate(-500003, 0.928);
    CHECK(far.excludes);
    // monotone in |d| at fixed T
    double prev = 0;
    for (long long v : {100001LL, 200001LL, 400001LL, 800005LL}) {
        auto c = discriminant_certificate(v, 0.928);
        CHECK(c.integral > prev);
        prev = c.integral;
    }
}

TEST_CASE("search_discriminants on a small range") {
    auto rep = search_discriminants(100);
    // every d from -40 to 100 fundamental is a member except -43, -91, -88, -67
    for (auto& m : rep.excluded) {
        bool expected_exclusion = m.d == -43 || m.d == -91 || m.d == -88 || m.d == -67;
        CHECK(expected_exclusion);
    }
    CHECK(rep.undecided.empty());
    bool has_m40 = false;
    for (auto& m : rep.members)
        if (m.d == -40) has_m40 = true;
    CHECK(has_m40);
}

TEST_CASE("dprime verdicts from scanned zero data") {
    ZeroStore zs;
    zs.add(zeros::zeta_zero_scan(200.0));
    for (long long d : {5LL, -3LL, -4LL, 8LL}) zs.add(zeros::l_zero_scan(d, 80.0));
    auto grp = arith::CharacterGroup::make(5);
    for (arith::u64 i = 0; i < 4; ++i) {
        auto chi = grp->character(i);
        if (!chi.is_real() && chi.index() < chi.conjugate_index()) {
            auto [a, b] = zeros::scan_conjugate_pair(chi, 80.0);
            zs.add(a);
            zs.add(b);
        }
    }

    // members of the closed-form set stay members under the weaker weight
    // (containment: |rho(rho+1)| > |rho(rho-1)|)
    for (long long d : {5LL, -3LL, -4LL, 8LL}) {
        auto v = dprime_discriminant(d, zs, kTauResiduePairs);
        CHECK(v.verdict == Verdict::Member);
        CHECK(v.b_prime.hi < b_chi(d).value.hi + 1e-9);
    }

    // (5,1) and (5,4) members; (5,2), (5,3) fail on C(q,a) = 0
    auto p51 = table3_pair(5, 1, zs, kTauResiduePairs);
    auto p54 = table3_pair(5, 4, zs, kTauResiduePairs);
    auto p52 = table3_pair(5, 2, zs, kTauResiduePairs);
    auto p53 = table3_pair(5, 3, zs, kTauResiduePairs);
    CHECK(p51.verdict == Verdict::Member);
    CHECK(p54.verdict == Verdict::Member);
    CHECK(p52.verdict == Verdict::NonMember);
    CHECK(p53.verdict == Verdict::NonMember);

    // missing data reports as undecided
    CHECK_THROWS_AS(table3_pair(7, 1, zs, kTauResiduePairs), UndecidedError);
}

TEST_CASE("dprime reconstruction emits the negativity probe") {
    auto zl = zeros::l_zero_scan(-4, 80.0);
    auto pts = dprime_reconstruction(zl, 1e4, 1e12, 40);
    REQUIRE(pts.size() == 40);
    // B'_{chi_-4} is far below 2/3, so the probe should be negative
    // throughout this window
    for (auto& p : pts) {
        CHECK(p.main < 0);
        CHECK(p.value < 0);
    }
    // the normalized main term approaches -2/3 like 1/log X; at X = 1e12 it
    // is still enhanced to about -0.744
    CHECK(pts.back().main > -0.80);
    CHECK(pts.back().main < -0.66);
}
