// prime_engine.cpp

#include "mertens/prime_engine.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "mertens/arith.hpp"
#include "mertens/quad.hpp"

namespace mertens::engine {

namespace {

constexpr u64 kXMaxLimit = 10'000'000'000ull;

std::vector<u64> base_primes(u64 limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<u64> ps;
    for (u64 i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            ps.push_back(i);
            for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return ps;
}

struct PrimePower {
    u64 v;          // p^k, k >= 2
    double log_p;
    int k;
};

std::vector<PrimePower> prime_powers(u64 x_max, const std::vector<u64>& bases) {
    std::vector<PrimePower> out;
    for (u64 p : bases) {
        if (p * p > x_max) break;
        double lp = std::log((double)p);
        u64 v = p * p;
        int k = 2;
        while (true) {
            out.push_back({v, lp, k});
            if (v > x_max / p) break;
            v *= p;
            ++k;
        }
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.v < b.v; });
    return out;
}

struct PrimeTerm {
    u64 p;
    double log_p;
    double recip;     // 1/p
    double lpp;       // log p / p
    double l1m;       // log(1 - 1/p)
    double li_p;      // li(p), only filled while gap integrals are live
};

// Sieve one segment [lo, hi) and emit its primes with precomputed terms.
void sieve_segment(u64 lo, u64 hi, const std::vector<u64>& bases, u64 li_cut,
                   std::vector<PrimeTerm>& out) {
    out.clear();
    const u64 len = hi - lo;
    std::vector<std::uint8_t> comp(len, 0);
    for (u64 p : bases) {
        if (p == 2) continue;
        if (p * p >= hi) break;
        u64 start = std::max(p * p, (lo + p - 1) / p * p);
        if (start % 2 == 0) start += p;      // odd multiples only
        for (u64 m = start; m < hi; m += 2 * p) comp[m - lo] = 1;
    }
    if (lo <= 2 && 2 < hi) {
        double lp = std::log(2.0);
        out.push_back({2, lp, 0.5, lp / 2, std::log1p(-0.5),
                       2 <= li_cut ? sf::li(2.0) : 0.0});
    }
    u64 n = std::max<u64>(lo | 1, 3);
    for (; n < hi; n += 2) {
        if (comp[n - lo]) continue;
        double x = (double)n;
        double lp = std::log(x);
        double r = 1.0 / x;
        out.push_back({n, lp, r, lp * r, std::log1p(-r),
                       n <= li_cut ? sf::li(x) : 0.0});
    }
}

// Sequential fold over prime/power/checkpoint events in increasing order.
// Emission logic is supplied by the caller through Sink.
template <typename FoldPrime, typename FoldPower, typename Emit>
void walk_events(u64 x_max, const std::vector<u64>& bases,
                 const std::vector<u64>& grid, const StreamOptions& opt,
                 u64 li_cut, FoldPrime&& fold_prime, FoldPower&& fold_power,
                 Emit&& emit) {
    const auto powers = prime_powers(x_max, bases);
    size_t pw = 0, ck = 0;

    auto emit_below = [&](u64 v) {
        while (ck < grid.size() && grid[ck] < v) emit(grid[ck++]);
    };
    auto powers_below = [&](u64 v) {
        while (pw < powers.size() && powers[pw].v < v) {
            emit_below(powers[pw].v);
            fold_power(powers[pw]);
            ++pw;
        }
    };

    const u64 seg = std::max<u64>(opt.segment_size, 1u << 14);
    int workers = opt.workers > 0 ? opt.workers : omp_get_max_threads();
    const int batch = std::max(2 * workers, 4);
    std::vector<std::vector<PrimeTerm>> slots(batch);

    for (u64 base = 2; base <= x_max;) {
        const int nseg = (int)std::min<u64>(batch, (x_max - base) / seg + 1);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
        for (int s = 0; s < nseg; ++s) {
            u64 lo = base + (u64)s * seg;
            u64 hi = std::min(lo + seg, x_max + 1);
            sieve_segment(lo, hi, bases, li_cut, slots[s]);
        }
        for (int s = 0; s < nseg; ++s) {
            for (const PrimeTerm& t : slots[s]) {
                powers_below(t.p);
                emit_below(t.p);
                fold_prime(t);
            }
        }
        base += (u64)nseg * seg;
    }
    powers_below(x_max + 1);
    emit_below(x_max + 1);
}

double loglog(double x) { return std::log(std::log(x)); }

} // namespace

std::vector<u64> default_grid(u64 x_max) {
    std::vector<u64> g;
    double x = 2.0;
    while ((u64)x <= x_max) {
        g.push_back((u64)x);
        double nx = x * 1.001;
        x = (nx - x < 1.0) ? x + 1.0 : nx;
    }
    for (u64 p : arith::primes_to_million()) {
        if (p >= 10'000) break;
        if (p <= x_max) g.push_back(p);
    }
    g.push_back(x_max);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

MertensErrors mertens_errors(const PrimeCheckpoint& cp, const sf::MertensConstants& mc) {
    double x = (double)cp.x;
    double lx = std::log(x);
    MertensErrors e;
    e.x = x;
    e.e1 = (cp.sum_logp_over_p - dd(lx) - mc.e1).to_double();
    e.e2 = (cp.sum_recip - dd(loglog(x)) - mc.e2).to_double();
    e.e3 = dd_exp(-cp.sum_log_one_minus).to_double() / lx - sf::kExpGamma;
    return e;
}

StreamResult stream_checkpoints(u64 x_max, const std::vector<u64>& grid,
                                const StreamOptions& opt) {
    if (x_max < 2) throw PreconditionError("stream_checkpoints: x_max >= 2");
    if (x_max > kXMaxLimit) throw PreconditionError("stream_checkpoints: x_max beyond supported scale");
    for (size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw PreconditionError("stream_checkpoints: grid must be strictly increasing");
    if (!grid.empty() && grid.back() > x_max) throw PreconditionError("stream_checkpoints: grid exceeds x_max");

    const auto& mc = sf::mertens_constants();
    const double e2c = mc.e2.to_double();
    const u64 mean_cut = opt.mean_cut ? opt.mean_cut : std::min<u64>(x_max, 2'000'000);

    const u64 sq = (u64)std::sqrt((double)x_max) + 2;
    const auto bases = base_primes(sq);

    StreamResult res;
    res.checkpoints.reserve(grid.size());

    // fold state
    u64 pi = 0;
    dd theta, s_recip, s_lpp, s_l1m;
    dd pw_psi, pw_Pi, pw_lon, pw_lonln;
    u64 last_p = 0;
    double li_last = 0.0;
    bool gaps_live = true;
    dd acc_e2exp, acc_e3dir, acc_d2;
    double d2_err = 0.0;
    u64 gap_count = 0;

    auto e2_on_gap = [&](double s2, double x) { return s2 - loglog(x) - e2c; };

    auto fold_prime = [&](const PrimeTerm& t) {
        if (gaps_live && last_p >= 2) {
            if (t.p <= mean_cut) {
                double a = (double)last_p, b = (double)t.p;
                double s2 = s_recip.to_double();
                double dli = t.li_p - li_last;
                acc_e2exp += dd_exp(s_recip - mc.e2).to_double() * dli;
                acc_e3dir += dd_exp(-s_l1m).to_double() * dli;
                auto f = [&](double x) { double e = e2_on_gap(s2, x); return e * e; };
                double g8 = quad::gl8(f, a, b);
                acc_d2 += g8;
                if (++gap_count % 100 == 0) d2_err += 100.0 * std::abs(quad::gl16(f, a, b) - g8);
            } else {
                gaps_live = false;
            }
        }
        pi += 1;
        theta += t.log_p;
        s_recip += t.recip;
        s_lpp += t.lpp;
        s_l1m += t.l1m;
        last_p = t.p;
        li_last = t.li_p;
    };

    auto fold_power = [&](const PrimePower& w) {
        pw_psi += w.log_p;
        pw_Pi += 1.0 / w.k;
        pw_lon += w.log_p / (double)w.v;
        pw_lonln += 1.0 / ((double)w.k * (double)w.v);
    };

    auto emit = [&](u64 c) {
        double X = (double)c;
        double lX = std::log(X), llX = loglog(X), liX = sf::li(X);

        PrimeCheckpoint cp;
        cp.x = c;
        cp.pi = pi;
        cp.theta = theta;
        cp.psi = theta + pw_psi;
        cp.Pi = dd((double)pi) + pw_Pi;
        cp.sum_recip = s_recip;
        cp.sum_logp_over_p = s_lpp;
        cp.sum_log_one_minus = s_l1m;
        cp.sum_lambda_over_n = s_lpp + pw_lon;
        cp.sum_lambda_over_nlogn = s_recip + pw_lonln;
        res.checkpoints.push_back(cp);
        res.errors.push_back(mertens_errors(cp, mc));

        TailIntegrals ti;
        ti.X = X;
        ti.theta_x = (s_lpp - theta / X - dd(lX) + dd(sf::kLog2)).to_double();
        ti.pi_li = (s_recip - dd((double)pi / X) + dd(liX / X - llX - 0.5 * sf::kLi2 + sf::kLogLog2)).to_double();
        ti.psi_x = (cp.sum_lambda_over_n - cp.psi / X - dd(lX)).to_double();
        ti.Pi_li = (cp.sum_lambda_over_nlogn - cp.Pi / X +
                    dd((liX - sf::kLi2) / X - llX + sf::kLogLog2)).to_double();
        ti.theta_log2 = ((dd((double)pi) - theta / lX) - dd(liX - X / lX - sf::kLi2 + 2.0 / sf::kLog2)).to_double();
        res.tails.push_back(ti);

        if (c <= mean_cut) {
            MeanValueReport mv;
            mv.X = X;
            dd span(X - 2.0);
            mv.int_E1 = (dd(X) * s_lpp - theta - dd(X * lX - X - 2.0 * sf::kLog2 + 2.0) - mc.e1 * span).to_double();
            mv.int_E2 = (dd(X) * s_recip - dd((double)pi) - dd(X * llX - liX - 2.0 * sf::kLogLog2 + sf::kLi2) - mc.e2 * span).to_double();
            mv.delta1 = mv.int_E2;

            // partial pieces of the gap containing X
            double part_exp = 0.0, part_dir = 0.0, part_d2 = 0.0;
            if (last_p >= 2 && c > last_p) {
                double dli = liX - li_last;
                part_exp = dd_exp(s_recip - mc.e2).to_double() * dli;
                part_dir = dd_exp(-s_l1m).to_double() * dli;
                double s2 = s_recip.to_double();
                auto f = [&](double x) { double e = e2_on_gap(s2, x); return e * e; };
                part_d2 = quad::gl8(f, (double)last_p, X);
            }
            mv.int_exp_e2 = (acc_e2exp + part_exp).to_double();
            mv.int_E3 = ((acc_e2exp + part_exp - span) * sf::kExpGamma).to_double();
            mv.int_E3_direct = (acc_e3dir + part_dir - dd(sf::kExpGamma) * span).to_double();
            mv.delta2 = (acc_d2 + part_d2).to_double();
            mv.delta2_err = d2_err + 1e-15 * mv.delta2;
            double sx = std::sqrt(X);
            mv.f1 = mv.int_E1 / sx;
            mv.f2 = lX * mv.int_E2 / sx;
            mv.f3 = lX * mv.int_E3 / (sf::kExpGamma * sx);
            res.means.push_back(mv);
        }
    };

    walk_events(x_max, bases, grid, opt, mean_cut, fold_prime, fold_power, emit);
    return res;
}

TwistedResult twisted_stream(i64 d, u64 x_max, const std::vector<u64>& grid,
                             const sf::TwistedConstants& tc, const StreamOptions& opt) {
    if (!arith::is_fundamental(d)) throw PreconditionError("twisted_stream: d not fundamental");
    if (x_max < 2 || x_max > kXMaxLimit) throw PreconditionError("twisted_stream: x_max out of range");

    const u64 sq = (u64)std::sqrt((double)x_max) + 2;
    const auto bases = base_primes(sq);

    TwistedResult res;
    dd s1, s2, theta_chi, pi_chi, l1m;
    u64 last_p = 0;
    dd acc_e3;

    auto fold_prime = [&](const PrimeTerm& t) {
        int c = arith::kronecker(d, t.p);
        if (last_p >= 2)
            acc_e3 += dd_exp(-l1m).to_double() * (double)(t.p - last_p);
        last_p = t.p;
        if (c == 0) return;
        if (c > 0) {
            s1 += t.lpp;
            s2 += t.recip;
            theta_chi += t.log_p;
            pi_chi += 1.0;
            l1m += t.l1m;
        } else {
            s1 += -t.lpp;
            s2 += -t.recip;
            theta_chi += -t.log_p;
            pi_chi += -1.0;
            l1m += std::log1p(t.recip);
        }
    };
    auto fold_power = [&](const PrimePower&) {};
    auto emit = [&](u64 c) {
        double X = (double)c;
        TwistedCheckpoint t;
        t.x = c;
        t.s1 = s1;
        t.s2 = s2;
        t.theta_chi = theta_chi;
        t.pi_chi = pi_chi;
        t.log_prod = l1m;
        t.e1 = (s1 - tc.e1).to_double();
        t.e2 = (s2 - tc.e2).to_double();
        t.e3 = dd_exp(-l1m).to_double() - tc.l1;
        dd span(X - 2.0);
        t.int_e1 = (dd(X) * s1 - theta_chi - dd(tc.e1) * span).to_double();
        t.int_e2 = (dd(X) * s2 - pi_chi - dd(tc.e2) * span).to_double();
        double part = last_p >= 2 && c > last_p
                          ? dd_exp(-l1m).to_double() * (double)(c - last_p)
                          : 0.0;
        t.int_e3 = (acc_e3 + part - dd(tc.l1) * span).to_double();
        double sx = std::sqrt(X), lX = std::log(X);
        t.f1 = t.int_e1 / sx;
        t.f2 = lX * t.int_e2 / sx;
        t.f3 = lX * t.int_e3 / (tc.l1 * sx);
        res.checkpoints.push_back(t);
    };

    walk_events(x_max, bases, grid, opt, 0, fold_prime, fold_power, emit);
    return res;
}

ProgressionResult progression_stream(u64 q, u64 a, u64 x_max,
                                     const std::vector<u64>& grid,
                                     const ProgressionConstants& pc,
                                     const StreamOptions& opt) {
    if (q <= 1) throw PreconditionError("progression_stream: q > 1 required");
    if (arith::gcd(a % q, q) != 1) throw PreconditionError("progression_stream: gcd(a,q) != 1");
    if (x_max < 2 || x_max > kXMaxLimit) throw PreconditionError("progression_stream: x_max out of range");

    const double invphi = 1.0 / (double)arith::phi(q);
    const u64 ar = a % q;
    const u64 sq = (u64)std::sqrt((double)x_max) + 2;
    const auto bases = base_primes(sq);

    ProgressionResult res;
    u64 pi_qa = 0, last_class_p = 0;
    dd theta_qa, psi_pw, s1, s2, l1m;
    dd acc_e3;

    auto gap_piece = [&](double lo, double hi) {
        auto f = [&](double x) { return std::pow(std::log(x), -invphi); };
        return quad::adaptive(f, lo, hi, 1e-12 * std::max(1.0, hi - lo));
    };

    auto fold_prime = [&](const PrimeTerm& t) {
        if (t.p % q != ar) return;
        double lo = last_class_p >= 2 ? (double)last_class_p : 2.0;
        if (t.p > 2)
            acc_e3 += dd_exp(-l1m).to_double() * gap_piece(lo, (double)t.p);
        last_class_p = t.p;
        pi_qa += 1;
        theta_qa += t.log_p;
        s1 += t.lpp;
        s2 += t.recip;
        l1m += t.l1m;
    };
    auto fold_power = [&](const PrimePower& w) {
        if (w.v % q == ar) psi_pw += w.log_p;
    };
    auto emit = [&](u64 c) {
        double X = (double)c;
        double lX = std::log(X), llX = loglog(X), liX = sf::li(X);
        ProgressionCheckpoint p;
        p.x = c;
        p.pi_qa = pi_qa;
        p.theta_qa = theta_qa;
        p.psi_qa = theta_qa + psi_pw;
        p.s1 = s1;
        p.s2 = s2;
        p.log_prod = l1m;
        p.e1 = (s1 - dd(lX * invphi) - dd(pc.e1)).to_double();
        p.e2 = (s2 - dd(llX * invphi) - dd(pc.e2)).to_double();
        p.e3 = dd_exp(-l1m).to_double() * std::pow(lX, -invphi) - pc.e3;
        dd span(X - 2.0);
        p.int_e1 = (dd(X) * s1 - theta_qa - dd(invphi * (X * lX - X - 2.0 * sf::kLog2 + 2.0)) - dd(pc.e1) * span).to_double();
        p.int_e2 = (dd(X) * s2 - dd((double)pi_qa) - dd(invphi * (X * llX - liX - 2.0 * sf::kLogLog2 + sf::kLi2)) - dd(pc.e2) * span).to_double();
        double part = last_class_p >= 2 && c > last_class_p
                          ? dd_exp(-l1m).to_double() * gap_piece((double)last_class_p, X)
                          : (last_class_p == 0 ? dd_exp(-l1m).to_double() * gap_piece(2.0, X) : 0.0);
        p.int_e3 = (acc_e3 + part - dd(pc.e3) * span).to_double();
        res.checkpoints.push_back(p);
    };

    walk_events(x_max, bases, grid, opt, 0, fold_prime, fold_power, emit);
    return res;
}

ProgressionConstants estimate_progression_constants(u64 q, u64 a, u64 x_max,
                                                    const StreamOptions& opt) {
    if (x_max < 1000) throw PreconditionError("estimate_progression_constants: x_max too small");
    // sample nine points log-spaced over the last decade
    std::vector<u64> grid;
    for (int j = 8; j >= 0; --j)
        grid.push_back((u64)std::llround((double)x_max * std::pow(10.0, -j / 8.0)));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    ProgressionConstants zero;
    zero.e3 = 0.0;
    auto run = progression_stream(q, a, x_max, grid, zero, opt);

    const double invphi = 1.0 / (double)arith::phi(q);
    auto extrapolate = [&](auto&& value_of) {
        // model v(x) = E + c / sqrt(x); eliminate c across pairs (j, j+4)
        std::vector<double> est;
        size_t n = run.checkpoints.size();
        for (size_t j = 0; j + 4 < n; ++j) {
            const auto &c1 = run.checkpoints[j], &c2 = run.checkpoints[j + 4];
            double x1 = (double)c1.x, x2 = (double)c2.x;
            double v1 = value_of(c1), v2 = value_of(c2);
            est.push_back((v2 * std::sqrt(x2) - v1 * std::sqrt(x1)) /
                          (std::sqrt(x2) - std::sqrt(x1)));
        }
        double mean = 0;
        for (double e : est) mean += e;
        mean /= (double)est.size();
        double spread = 0;
        for (double e : est) spread = std::max(spread, std::abs(e - mean));
        return std::make_pair(mean, spread);
    };

    ProgressionConstants out;
    out.extrapolated = true;
    auto [m1, s1] = extrapolate([&](const ProgressionCheckpoint& c) {
        return (c.s1 - dd(std::log((double)c.x) * invphi)).to_double();
    });
    auto [m2, s2] = extrapolate([&](const ProgressionCheckpoint& c) {
        return (c.s2 - dd(loglog((double)c.x) * invphi)).to_double();
    });
    auto [m3, s3] = extrapolate([&](const ProgressionCheckpoint& c) {
        return dd_exp(-c.log_prod).to_double() * std::pow(std::log((double)c.x), -invphi);
    });
    out.e1 = m1; out.e1_spread = s1;
    out.e2 = m2; out.e2_spread = s2;
    out.e3 = m3; out.e3_spread = s3;
    return out;
}

namespace reference {

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> ps;
    if (n < 2) return ps;
    std::vector<bool> comp(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (!comp[i]) {
            ps.push_back(i);
            if (i <= n / i)
                for (u64 j = i * i; j <= n; j += i) comp[j] = true;
        }
    }
    return ps;
}

PrimeCheckpoint checkpoint_at(u64 x, const std::vector<u64>& primes) {
    PrimeCheckpoint cp;
    cp.x = x;
    for (u64 p : primes) {
        if (p > x) break;
        double fp = (double)p;
        double lp = std::log(fp);
        cp.pi += 1;
        cp.theta += lp;
        cp.sum_recip += 1.0 / fp;
        cp.sum_logp_over_p += lp / fp;
        cp.sum_log_one_minus += std::log1p(-1.0 / fp);
        // prime powers
        u64 v = p;
        int k = 1;
        while (v <= x / p) {
            v *= p;
            ++k;
            cp.psi += lp;
            cp.Pi += 1.0 / k;
            cp.sum_lambda_over_n += lp / (double)v;
            cp.sum_lambda_over_nlogn += 1.0 / ((double)k * (double)v);
        }
    }
    cp.psi += cp.theta;
    cp.Pi += (double)cp.pi;
    cp.sum_lambda_over_n += cp.sum_logp_over_p;
    cp.sum_lambda_over_nlogn += cp.sum_recip;
    return cp;
}

} // namespace reference

} // namespace mertens::engine
