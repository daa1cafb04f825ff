// prime_engine.hpp
//
// Segmented-sieve streaming of all prime sums with checkpoint emission,
// exact piecewise-analytic mean values of the Mertens error terms E_1, E_2,
// E_3 (plain, twisted by a real character, or restricted to a progression),
// truncated tail integrals, and the race quantities Delta_1, Delta_2.
//
// Parallel model: segments are sieved and their per-prime terms precomputed
// by OpenMP workers (pass 1); a sequential fold then adds every term in
// increasing-prime order (pass 2). The addition order is therefore fixed,
// so every emitted value is bit-identical regardless of segment size and
// worker count. A plain serial implementation is kept under
// engine::reference for oracle testing.

#pragma once

#include <cstdint>
#include <vector>

#include "mertens/dd.hpp"
#include "mertens/errors.hpp"
#include "mertens/specfun.hpp"

namespace mertens::engine {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Snapshot of all streaming prime sums at one abscissa x.
struct PrimeCheckpoint {
    u64 x = 0;
    u64 pi = 0;
    dd theta;                    // sum_{p<=x} log p
    dd psi;                      // sum_{n<=x} Lambda(n)
    dd Pi;                       // sum_{n<=x} Lambda(n)/log n
    dd sum_recip;                // sum 1/p
    dd sum_logp_over_p;          // sum log p / p
    dd sum_log_one_minus;        // sum log(1 - 1/p)
    dd sum_lambda_over_n;        // sum Lambda(n)/n
    dd sum_lambda_over_nlogn;    // sum Lambda(n)/(n log n)
};

struct MertensErrors {
    double x;
    double e1, e2, e3;
};

MertensErrors mertens_errors(const PrimeCheckpoint& cp, const sf::MertensConstants& mc);

// Exact mean values at a cut X. int_E3 follows the exponential identity
// route e^gamma * int (e^{E_2} - 1); int_E3_direct integrates the literal
// product-based E_3. The two differ by the finite-x prime-power tail
// (they agree only asymptotically); the sandwich Delta_1 < e^{-gamma}
// int_E3 < Delta_1 + Delta_2 holds for the identity route.
struct MeanValueReport {
    double X = 0;
    double int_E1 = 0, int_E2 = 0, int_E3 = 0;
    double int_E3_direct = 0;
    double int_exp_e2 = 0;       // int_2^X e^{E_2(x)} dx
    double f1 = 0, f2 = 0, f3 = 0;
    double delta1 = 0;           // = int_E2
    double delta2 = 0;           // int_2^X E_2(x)^2 dx (per-gap quadrature)
    double delta2_err = 0;       // quadrature error estimate
};

// Truncated values of the classical integrals, exact piecewise. li is the
// principal-value logarithmic integral except in Pi_li, whose classical
// limit gamma + log log 2 corresponds to li normalized at 2
// (li(x) - li(2)); the pi_li limit E_2 + log log 2 - li(2)/2 uses the
// principal value.
struct TailIntegrals {
    double X = 0;
    double theta_x = 0;      // int_2^X (theta(u)-u)/u^2 du
    double pi_li = 0;        // int_2^X (pi(u)-li(u))/u^2 du
    double psi_x = 0;        // int_1^X (psi(u)-u)/u^2 du
    double Pi_li = 0;        // int_2^X (Pi(u)-(li(u)-li(2)))/u^2 du
    double theta_log2 = 0;   // int_2^X (theta(u)-u)/(u log^2 u) du
};

// Default checkpoint grid: geometric with ratio 1.001 from 2, plus every
// prime below 10^4, plus x_max itself.
std::vector<u64> default_grid(u64 x_max);

struct StreamOptions {
    u64 segment_size = 1u << 21;
    int workers = 0;        // 0 = OpenMP default
    u64 mean_cut = 0;       // emit mean values for x <= mean_cut; 0 = min(x_max, 2e6)
};

struct StreamResult {
    std::vector<PrimeCheckpoint> checkpoints;
    std::vector<MertensErrors> errors;
    std::vector<TailIntegrals> tails;
    std::vector<MeanValueReport> means;   // for checkpoints <= mean_cut
};

StreamResult stream_checkpoints(u64 x_max, const std::vector<u64>& grid,
                                const StreamOptions& opt = {});

// ---- twisted by a real primitive character chi_d ----

struct TwistedCheckpoint {
    u64 x = 0;
    dd s1;            // sum chi(p) log p / p
    dd s2;            // sum chi(p) / p
    dd theta_chi;     // sum chi(p) log p
    dd pi_chi;        // sum chi(p)
    dd log_prod;      // sum log(1 - chi(p)/p)
    double e1, e2, e3;
    double int_e1, int_e2, int_e3;
    double f1, f2, f3;
};

struct TwistedResult {
    std::vector<TwistedCheckpoint> checkpoints;
};

TwistedResult twisted_stream(i64 d, u64 x_max, const std::vector<u64>& grid,
                             const sf::TwistedConstants& tc,
                             const StreamOptions& opt = {});

// ---- restricted to the progression p = a (mod q) ----

// The constants E_i(q,a) are inputs; estimate() recovers them numerically as
// the stabilized value of (partial sum - main term), extrapolated over the
// last decade of the run. The spread of the extrapolants is reported; these
// are estimates, not certified values.
struct ProgressionConstants {
    double e1 = 0, e2 = 0, e3 = 0;
    double e1_spread = 0, e2_spread = 0, e3_spread = 0;
    bool extrapolated = false;
};

ProgressionConstants estimate_progression_constants(u64 q, u64 a, u64 x_max,
                                                    const StreamOptions& opt = {});

struct ProgressionCheckpoint {
    u64 x = 0;
    u64 pi_qa = 0;
    dd theta_qa, psi_qa;
    dd s1, s2, log_prod;
    double e1, e2, e3;
    double int_e1, int_e2, int_e3;
};

struct ProgressionResult {
    std::vector<ProgressionCheckpoint> checkpoints;
};

ProgressionResult progression_stream(u64 q, u64 a, u64 x_max,
                                     const std::vector<u64>& grid,
                                     const ProgressionConstants& pc,
                                     const StreamOptions& opt = {});

// ---- serial reference implementation (tests, benchmarks) ----

namespace reference {

std::vector<u64> primes_up_to(u64 n);

// Direct single-pass checkpoint computation from a prime list.
PrimeCheckpoint checkpoint_at(u64 x, const std::vector<u64>& primes);

} // namespace reference

} // namespace mertens::engine
