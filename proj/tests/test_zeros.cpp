// test_zeros.cpp

#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "mertens/specfun.hpp"
#include "mertens/zeros.hpp"

using namespace mertens;
using namespace mertens::zeros;

TEST_CASE("bmor bracket") {
    // q=7, T=4: ell = log(42/2pi) > 1.567
    auto b = bmor_bracket(4.0, 7, 1);
    CHECK(b.ell == doctest::Approx(std::log(42.0 / (2 * M_PI))).epsilon(1e-12));
    CHECK(b.ell > 1.567);
    CHECK(b.lower <= b.upper);
    CHECK_THROWS_AS(bmor_bracket(0.5, 5, 0), PreconditionError);
    CHECK_THROWS_AS(bmor_bracket(4.0, 1, 0), PreconditionError);
    // (q=5, T=4) sits just outside the bracket's domain: ell = 1.5634 <= 1.567
    CHECK_THROWS_AS(bmor_bracket(4.0, 5, 0), PreconditionError);
    // width formula instantiation at a valid nearby point
    auto b5 = bmor_bracket(4.2, 5, 0);
    double ell = std::log(5.0 * 6.2 / (2 * M_PI));
    CHECK(b5.width == doctest::Approx(0.22737 * ell + 2 * std::log1p(ell) - 0.5).epsilon(1e-12));
}

TEST_CASE("n_tilde clamps, parity, monotone") {
    CHECK(n_tilde(5.0 / 7.0, 460001) == 0);  // small T: expression negative, clamped
    for (double T : {1.0, 2.0, 5.0, 10.0, 50.0}) {
        auto n = n_tilde(T, 163);
        CHECK(n % 2 == 0);
        CHECK(n >= 0);
    }
    long long prev = -1;
    for (double T = 1.0; T <= 40.0; T += 0.5) {
        auto n = n_tilde(T, 460001);
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("riemann-siegel theta against the asymptotic expansion") {
    for (double t : {30.0, 100.0, 500.0}) {
        double asym = 0.5 * t * std::log(t / (2 * M_PI)) - 0.5 * t - M_PI / 8 +
                      1.0 / (48 * t) + 7.0 / (5760 * t * t * t);
        CHECK(std::abs(riemann_siegel_theta(t) - asym) < 1e-6);
    }
}

TEST_CASE("zeta zero scan: first ordinate and count to 100") {
    auto zl = zeta_zero_scan(100.0);
    REQUIRE(zl.count() == 29);
    CHECK(std::abs(zl.ordinates[0] - 14.134725142) < 1e-6);
    CHECK(std::abs(zl.ordinates[1] - 21.022039639) < 1e-6);
    CHECK(zl.ordinates[0] > 14.0);  // no ordinate below 14
    CHECK_FALSE(zl.suspected_missing);
    // count audit vs main term
    double expect = riemann_siegel_theta(100.0) / M_PI + 1.0;
    CHECK(std::abs(29.0 - expect) < 1.0);
}

TEST_CASE("l zero scans for small discriminants") {
    auto l5 = l_zero_scan(5, 60.0);
    CHECK_FALSE(l5.suspected_missing);
    CHECK(std::abs(l5.ordinates[0] - 6.6484534) < 1e-5);
    auto l4 = l_zero_scan(-4, 60.0);
    CHECK_FALSE(l4.suspected_missing);
    CHECK(std::abs(l4.ordinates[0] - 6.0209490) < 1e-5);
    // N(10) within the bracket
    auto br = bmor_bracket(10.0, 4, 1);
    size_t upto10 = 0;
    for (double g : l4.ordinates)
        if (g <= 10.0) ++upto10;
    CHECK(2.0 * (double)upto10 >= br.lower - 1e-9);
    CHECK(2.0 * (double)upto10 <= br.upper + 1e-9);
}

TEST_CASE("conjugate pair scan for the complex characters mod 5") {
    auto grp = arith::CharacterGroup::make(5);
    for (arith::u64 i = 0; i < 4; ++i) {
        auto chi = grp->character(i);
        if (chi.is_real()) continue;
        auto [a, b] = scan_conjugate_pair(chi, 60.0);
        CHECK_FALSE(a.suspected_missing);
        CHECK_FALSE(b.suspected_missing);
        CHECK(a.count() + b.count() > 20);
        break;
    }
}

TEST_CASE("zero list file round trip and validation") {
    auto zl = zeta_zero_scan(60.0);
    std::string path = "/tmp/mertens_test_zeta.txt";
    write_zero_list(path, zl);
    auto in = ingest_zero_list(path);
    CHECK(in.id.kind == LFunctionId::Kind::Zeta);
    REQUIRE(in.count() == zl.count());
    for (size_t i = 0; i < in.count(); ++i)
        CHECK(std::abs(in.ordinates[i] - zl.ordinates[i]) < 1e-8);
    CHECK(in.t_max == doctest::Approx(zl.t_max));
    validate_zero_list(in);

    // idempotent: write the ingested list again, identical bytes
    std::string path2 = "/tmp/mertens_test_zeta2.txt";
    in.source = zl.source;
    write_zero_list(path2, in);
    std::ifstream f1(path), f2(path2);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
}

TEST_CASE("ingest rejects corrupted files") {
    {
        std::ofstream f("/tmp/mertens_bad1.txt");
        f << "# lfunction: zeta\n14.1347\n13.9\n";
    }
    try {
        ingest_zero_list("/tmp/mertens_bad1.txt");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    {
        std::ofstream f("/tmp/mertens_bad2.txt");
        f << "# lfunction: zeta\n14.1347\nnot-a-number\n";
    }
    CHECK_THROWS_AS(ingest_zero_list("/tmp/mertens_bad2.txt"), ParseError);
    CHECK_THROWS_AS(ingest_zero_list("/tmp/definitely_missing_file.txt"), IoError);
    {
        // empty body is fine: T_max = 0
        std::ofstream f("/tmp/mertens_empty.txt");
        f << "# lfunction: zeta\n";
    }
    auto e = ingest_zero_list("/tmp/mertens_empty.txt");
    CHECK(e.t_max == 0.0);
    CHECK(e.count() == 0);
}

TEST_CASE("ingested vs scanned zeta ordinates to t = 100") {
    auto scanned = zeta_zero_scan(100.0);
    write_zero_list("/tmp/mertens_rt.txt", scanned);
    auto ingested = ingest_zero_list("/tmp/mertens_rt.txt");
    REQUIRE(ingested.count() == scanned.count());
    for (size_t i = 0; i < scanned.count(); ++i)
        CHECK(std::abs(ingested.ordinates[i] - scanned.ordinates[i]) < 1e-5);
#ifdef MERTENS_DATA_DIR
    // the bundled list against a fresh scan
    auto bundled = ingest_zero_list(std::string(MERTENS_DATA_DIR) + "/zeros/zeta.txt");
    REQUIRE(bundled.count() >= scanned.count());
    for (size_t i = 0; i < scanned.count(); ++i)
        CHECK(std::abs(bundled.ordinates[i] - scanned.ordinates[i]) < 1e-5);
#endif
}

TEST_CASE("tail weight closed form and bracket behavior") {
    // int_T^inf 2t/(1/4+t^2)^2 dt = 1/(1/4+T^2)
    double T = 4.0;
    CHECK(tail_weight(TailWeight::InvRhoSq, T) == doctest::Approx(1.0 / 16.25).epsilon(1e-14));
    // width shrinks with T
    double prev = 1e9;
    for (double t : {50.0, 100.0, 200.0}) {
        auto b = tail_bracket(t, 5, 0, TailWeight::InvRhoSq, -1);
        CHECK(b.hi >= b.lo);
        CHECK(b.hi - b.lo < prev);
        prev = b.hi - b.lo;
    }
    // W2 tail dominated by W1 tail
    for (double t : {20.0, 60.0}) {
        auto b1 = tail_bracket(t, 5, 0, TailWeight::InvRhoSq, 40.0);
        auto b2 = tail_bracket(t, 5, 0, TailWeight::InvRhoRhoPlus, 40.0);
        CHECK(b2.hi <= b1.hi + 1e-15);
        CHECK(b2.lo <= b1.lo + 1e-15);
    }
}

TEST_CASE("line evaluator agrees with the reference L evaluation") {
    auto chi = arith::CharacterGroup::kronecker_character(-3);
    // compare the rotated-Z path implicitly: the scan found zeros where the
    // reference evaluator also vanishes
    auto zl = l_zero_scan(-3, 30.0);
    for (double g : zl.ordinates) {
        cplx L = sf::dirichlet_l_line(cplx(0.5, g), chi);
        CHECK(std::abs(L) < 1e-4);
    }
}
