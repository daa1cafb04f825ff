// test_prime_engine.cpp

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "mertens/prime_engine.hpp"
#include "mertens/quad.hpp"

using namespace mertens;
using namespace mertens::engine;

namespace {

// piecewise-smooth integration oracle: integrate f over [2, X] splitting at
// primes (the only discontinuities of the integrands used here)
template <typename F>
double gap_oracle(const std::vector<u64>& primes, double X, F&& f) {
    double total = 0, lo = 2.0;
    for (u64 p : primes) {
        if ((double)p >= X) break;
        if ((double)p > lo) {
            total += quad::gl16(f, lo, (double)p);
            lo = (double)p;
        }
    }
    total += quad::gl16(f, lo, X);
    return total;
}

struct PrefixSums {
    std::vector<u64> primes;
    std::vector<double> s1, s2, l1m, theta;  // prefix sums including p_i

    explicit PrefixSums(u64 n) : primes(reference::primes_up_to(n)) {
        double a1 = 0, a2 = 0, a3 = 0, a4 = 0;
        for (u64 p : primes) {
            double ip = 1.0 / (double)p, lp = std::log((double)p);
            a1 += lp * ip;
            a2 += ip;
            a3 += std::log1p(-ip);
            a4 += lp;
            s1.push_back(a1);
            s2.push_back(a2);
            l1m.push_back(a3);
            theta.push_back(a4);
        }
    }
    size_t idx(double x) const {
        return std::upper_bound(primes.begin(), primes.end(), (u64)x) - primes.begin();
    }
    double S1(double x) const { size_t i = idx(x); return i ? s1[i - 1] : 0.0; }
    double S2(double x) const { size_t i = idx(x); return i ? s2[i - 1] : 0.0; }
    double L1m(double x) const { size_t i = idx(x); return i ? l1m[i - 1] : 0.0; }
    double Theta(double x) const { size_t i = idx(x); return i ? theta[i - 1] : 0.0; }
};

} // namespace

TEST_CASE("small checkpoints: pi(10), theta(10)") {
    auto grid = std::vector<u64>{10};
    auto res = stream_checkpoints(10, grid);
    REQUIRE(res.checkpoints.size() == 1);
    CHECK(res.checkpoints[0].pi == 4);
    CHECK(std::abs(res.checkpoints[0].theta.to_double() - std::log(210.0)) < 1e-14);
}

TEST_CASE("pi(1e6) against the reference sieve") {
    auto primes = reference::primes_up_to(1'000'000);
    auto res = stream_checkpoints(1'000'000, {1'000'000});
    CHECK(res.checkpoints[0].pi == primes.size());
    CHECK(res.checkpoints[0].pi == 78498);
}

TEST_CASE("psi - theta covers the prime powers at 100") {
    auto res = stream_checkpoints(100, {100});
    double expect = 5 * std::log(2.0) + 3 * std::log(3.0) + std::log(5.0) + std::log(7.0);
    CHECK(std::abs((res.checkpoints[0].psi - res.checkpoints[0].theta).to_double() - expect) < 1e-12);
}

TEST_CASE("engine vs reference checkpoint fields") {
    auto primes = reference::primes_up_to(300'000);
    std::vector<u64> grid{2, 3, 10, 97, 1000, 65537, 299999, 300000};
    auto res = stream_checkpoints(300'000, grid);
    REQUIRE(res.checkpoints.size() == grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        auto ref = reference::checkpoint_at(grid[i], primes);
        const auto& cp = res.checkpoints[i];
        CHECK(cp.pi == ref.pi);
        CHECK(std::abs((cp.theta - ref.theta).to_double()) < 1e-9);
        CHECK(std::abs((cp.psi - ref.psi).to_double()) < 1e-9);
        CHECK(std::abs((cp.Pi - ref.Pi).to_double()) < 1e-9);
        CHECK(std::abs((cp.sum_recip - ref.sum_recip).to_double()) < 1e-13);
        CHECK(std::abs((cp.sum_logp_over_p - ref.sum_logp_over_p).to_double()) < 1e-13);
        CHECK(std::abs((cp.sum_log_one_minus - ref.sum_log_one_minus).to_double()) < 1e-13);
        CHECK(std::abs((cp.sum_lambda_over_n - ref.sum_lambda_over_n).to_double()) < 1e-12);
        CHECK(std::abs((cp.sum_lambda_over_nlogn - ref.sum_lambda_over_nlogn).to_double()) < 1e-12);
    }
}

TEST_CASE("determinism across segment sizes and worker counts") {
    std::vector<u64> grid = default_grid(200'000);
    StreamOptions a;
    a.segment_size = 1u << 14;
    a.workers = 1;
    StreamOptions b;
    b.segment_size = 1u << 21;
    b.workers = 1;
    StreamOptions c;
    c.segment_size = 1u << 16;
    c.workers = 4;
    auto ra = stream_checkpoints(200'000, grid, a);
    auto rb = stream_checkpoints(200'000, grid, b);
    auto rc = stream_checkpoints(200'000, grid, c);
    REQUIRE(ra.checkpoints.size() == rb.checkpoints.size());
    REQUIRE(ra.checkpoints.size() == rc.checkpoints.size());
    for (size_t i = 0; i < ra.checkpoints.size(); ++i) {
        for (const auto* other : {&rb, &rc}) {
            const auto& x = ra.checkpoints[i];
            const auto& y = other->checkpoints[i];
            CHECK(x.sum_recip == y.sum_recip);   // bit-identical dd
            CHECK(x.sum_logp_over_p == y.sum_logp_over_p);
            CHECK(x.sum_log_one_minus == y.sum_log_one_minus);
            CHECK(x.theta == y.theta);
            CHECK(ra.errors[i].e3 == other->errors[i].e3);
        }
    }
    for (size_t i = 0; i < ra.means.size(); ++i) {
        CHECK(ra.means[i].int_E3 == rb.means[i].int_E3);
        CHECK(ra.means[i].delta2 == rb.means[i].delta2);
        CHECK(ra.means[i].int_E3 == rc.means[i].int_E3);
    }
}

TEST_CASE("mertens errors: positivity, E_1(2), |E_2| < 1") {
    auto grid = default_grid(1'000'000);
    auto res = stream_checkpoints(1'000'000, grid);
    const auto& mc = sf::mertens_constants();
    double e1_at_2 = 0.5 * std::log(2.0) - std::log(2.0) - mc.e1.to_double();
    CHECK(std::abs(res.errors.front().e1 - e1_at_2) < 1e-12);
    CHECK(std::abs(e1_at_2 - 0.98601) < 1e-4);
    for (const auto& e : res.errors) {
        CHECK(e.e1 > 0);
        CHECK(e.e2 > 0);
        CHECK(e.e3 > 0);
        CHECK(std::abs(e.e2) < 1.0);
    }
    // monotone: counting sums nondecreasing, log(1-1/p) sum nonincreasing
    for (size_t i = 1; i < res.checkpoints.size(); ++i) {
        CHECK(res.checkpoints[i].pi >= res.checkpoints[i - 1].pi);
        CHECK(res.checkpoints[i].theta.to_double() >= res.checkpoints[i - 1].theta.to_double());
        CHECK(res.checkpoints[i].sum_recip.to_double() >= res.checkpoints[i - 1].sum_recip.to_double());
        CHECK(res.checkpoints[i].sum_log_one_minus.to_double() <=
              res.checkpoints[i - 1].sum_log_one_minus.to_double());
    }
    // psi - theta > 0.98 sqrt(x) for x >= 121 (Rosser-Schoenfeld range check)
    for (const auto& cp : res.checkpoints) {
        if (cp.x < 121) continue;
        CHECK((cp.psi - cp.theta).to_double() > 0.98 * std::sqrt((double)cp.x));
    }
}

TEST_CASE("mean values agree with the adaptive-quadrature oracle to 1e-9 relative") {
    PrefixSums ps(20'000);
    const auto& mc = sf::mertens_constants();
    const double e1c = mc.e1.to_double(), e2c = mc.e2.to_double();
    const double eg = sf::kExpGamma;

    std::vector<u64> grid{100, 1009, 5000, 9973, 10000};
    auto res = stream_checkpoints(10'000, grid, {});
    REQUIRE(res.means.size() == grid.size());

    for (size_t i = 0; i < grid.size(); ++i) {
        double X = (double)grid[i];
        auto fE1 = [&](double x) { return ps.S1(x) - std::log(x) - e1c; };
        auto fE2 = [&](double x) { return ps.S2(x) - std::log(std::log(x)) - e2c; };
        auto fE2sq = [&](double x) { double e = fE2(x); return e * e; };
        auto fEexp = [&](double x) { return std::exp(ps.S2(x) - e2c) / std::log(x); };
        auto fE3dir = [&](double x) { return std::exp(-ps.L1m(x)) / std::log(x) - eg; };

        double oE1 = gap_oracle(ps.primes, X, fE1);
        double oE2 = gap_oracle(ps.primes, X, fE2);
        double oEexp = gap_oracle(ps.primes, X, fEexp);
        double oE3 = eg * (oEexp - (X - 2.0));
        double oE3dir = gap_oracle(ps.primes, X, fE3dir);
        double oD2 = gap_oracle(ps.primes, X, fE2sq);

        const auto& mv = res.means[i];
        CHECK(std::abs(mv.int_E1 - oE1) < 1e-9 * std::max(1.0, std::abs(oE1)));
        CHECK(std::abs(mv.int_E2 - oE2) < 1e-9 * std::max(1.0, std::abs(oE2)));
        CHECK(std::abs(mv.int_E3 - oE3) < 1e-9 * std::max(1.0, std::abs(oE3)));
        CHECK(std::abs(mv.int_E3_direct - oE3dir) < 1e-9 * std::max(1.0, std::abs(oE3dir)));
        CHECK(std::abs(mv.delta2 - oD2) < 1e-9 * std::max(1.0, std::abs(oD2)));
        CHECK(mv.delta1 == mv.int_E2);
    }
}

TEST_CASE("sandwich and mean positivity up to 1e5") {
    auto grid = default_grid(100'000);
    auto res = stream_checkpoints(100'000, grid, {});
    REQUIRE(!res.means.empty());
    for (const auto& mv : res.means) {
        if (mv.X <= 2.0) continue;
        CHECK(mv.int_E1 > 0);
        CHECK(mv.int_E2 > 0);
        CHECK(mv.int_E3 > 0);
        double mid = mv.int_E3 / sf::kExpGamma;
        CHECK(mv.delta1 < mid);
        CHECK(mid < mv.delta1 + mv.delta2);
    }
}

TEST_CASE("tail integrals match the quadrature oracle at 1e5") {
    PrefixSums ps(200'000);
    double X = 100'000;
    auto res = stream_checkpoints(100'000, {100'000}, {});
    const auto& ti = res.tails.back();

    auto primes = ps.primes;
    auto f_theta = [&](double x) { return (ps.Theta(x) - x) / (x * x); };
    CHECK(std::abs(ti.theta_x - gap_oracle(primes, X, f_theta)) < 1e-9);

    auto f_t2 = [&](double u) {
        double lu = std::log(u);
        return (ps.Theta(u) - u) / (u * lu * lu);
    };
    double oracle_I2 = gap_oracle(primes, X, f_t2);
    CHECK(std::abs(ti.theta_log2 - oracle_I2) < 1e-9);

    // pi - li identity: pi(x) - li(x) = (theta-x)/log x + I2 + 2/log 2 - li(2)
    const auto& cp = res.checkpoints.back();
    double lhs = (double)cp.pi - sf::li(X);
    double rhs = (cp.theta.to_double() - X) / std::log(X) + oracle_I2 +
                 2.0 / std::log(2.0) - sf::li(2.0);
    CHECK(std::abs(lhs - rhs) < 1e-6);
}

TEST_CASE("twisted stream: d = 5 sums and decay") {
    auto tc = sf::twisted_constants(5);
    auto res = twisted_stream(5, 1'000'000, {10, 1'000'000}, tc, {});
    REQUIRE(res.checkpoints.size() == 2);
    // chi_5: (2,3,7) -> -1, chi(5) = 0
    double expect = -0.5 - 1.0 / 3.0 - 1.0 / 7.0;
    CHECK(std::abs(res.checkpoints[0].s2.to_double() - expect) < 1e-15);
    // E_i(x; d) = o(1): small by 1e6
    CHECK(std::abs(res.checkpoints[1].e2) < 1e-2);
    CHECK(std::abs(res.checkpoints[1].e3) < 1e-2);
}

TEST_CASE("twisted mean envelope for d = 5") {
    auto tc = sf::twisted_constants(5);
    auto grid = default_grid(1'000'000);
    auto res = twisted_stream(5, 1'000'000, grid, tc, {});
    const double bchi5 = 0.157;  // slightly above the table value
    for (const auto& cp : res.checkpoints) {
        double envelope = (2.0 + bchi5 + 1.0) * std::sqrt((double)cp.x);
        CHECK(std::abs(cp.int_e1) < envelope);
    }
}

TEST_CASE("twisted E_3 for d = -4 tends to L(1) difference zero") {
    auto tc = sf::twisted_constants(-4);
    CHECK(std::abs(tc.l1 - M_PI / 4.0) < 1e-11);
    auto res = twisted_stream(-4, 2'000'000, {2'000'000}, tc, {});
    CHECK(std::abs(res.checkpoints[0].e3) < 2e-3);
}

TEST_CASE("progression stream: enumeration and partition") {
    ProgressionConstants zero;
    auto r41 = progression_stream(4, 1, 30, {30}, zero, {});
    // p = a (mod 4), p <= 30: 5, 13, 17, 29
    CHECK(r41.checkpoints[0].pi_qa == 4);
    double expect = std::log(5.0) + std::log(13.0) + std::log(17.0) + std::log(29.0);
    CHECK(std::abs(r41.checkpoints[0].theta_qa.to_double() - expect) < 1e-12);

    // partition: theta(x;4,1) + theta(x;4,3) = theta(x) - log 2
    u64 X = 100'000;
    auto r1 = progression_stream(4, 1, X, {X}, zero, {});
    auto r3 = progression_stream(4, 3, X, {X}, zero, {});
    auto full = stream_checkpoints(X, {X});
    double sum = r1.checkpoints[0].theta_qa.to_double() + r3.checkpoints[0].theta_qa.to_double();
    CHECK(std::abs(sum - (full.checkpoints[0].theta.to_double() - std::log(2.0))) < 1e-9);

    CHECK_THROWS_AS(progression_stream(4, 2, 100, {100}, zero, {}), PreconditionError);
}

TEST_CASE("progression psi - theta tracks C(q,a) sqrt(x)/phi(q)") {
    ProgressionConstants zero;
    for (auto [q, a, cqa_over_phi] : {std::tuple<u64, u64, double>{4, 1, 1.0},
                                      std::tuple<u64, u64, double>{5, 4, 0.5}}) {
        auto r = progression_stream(q, a, 10'000'000, {10'000'000}, zero, {});
        double diff = (r.checkpoints[0].psi_qa - r.checkpoints[0].theta_qa).to_double();
        double ratio = diff / (cqa_over_phi * std::sqrt(1e7));
        CHECK(std::abs(ratio - 1.0) < 0.05);
    }
}

TEST_CASE("progression constants stabilize") {
    auto pc = estimate_progression_constants(4, 1, 3'000'000, {});
    CHECK(pc.extrapolated);
    CHECK(pc.e1_spread < 0.02);
    CHECK(pc.e2_spread < 0.01);
    CHECK(pc.e3_spread < 0.05);
    // with these constants the errors at the endpoint are small
    auto r = progression_stream(4, 1, 3'000'000, {3'000'000}, pc, {});
    CHECK(std::abs(r.checkpoints[0].e1) < 0.02);
    CHECK(std::abs(r.checkpoints[0].e2) < 0.01);
}

TEST_CASE("default grid is strictly increasing and spans the range") {
    auto g = default_grid(50'000);
    CHECK(g.front() == 2);
    CHECK(g.back() == 50'000);
    for (size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    // contains every prime below 1e4
    auto primes = reference::primes_up_to(9999);
    for (u64 p : primes) CHECK(std::binary_search(g.begin(), g.end(), p));
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(stream_checkpoints(1, {1}, {}), PreconditionError);
    CHECK_THROWS_AS(stream_checkpoints(100, {5, 5}, {}), PreconditionError);
    CHECK_THROWS_AS(stream_checkpoints(100, {200}, {}), PreconditionError);
    CHECK_THROWS_AS(twisted_stream(6, 100, {100}, {}, {}), PreconditionError);
}
