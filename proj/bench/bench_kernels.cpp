// bench_kernels.cpp
//
// Times the OpenMP streaming engine against the serial reference on the
// same workloads, and the windowed zero scan at two worker counts.
// Usage: mertens_bench [x_max] [t_max]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "mertens/prime_engine.hpp"
#include "mertens/zeros.hpp"

using h_clock = std::chrono::high_resolution_clock;
using namespace mertens;

template <typename F>
double time_s(F&& f) {
    auto t1 = h_clock::now();
    f();
    auto t2 = h_clock::now();
    return std::chrono::duration_cast<std::chrono::duration<double>>(t2 - t1).count();
}

int main(int argc, char** argv) {
    engine::u64 x_max = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 10'000'000ull;
    double t_max = argc > 2 ? std::strtod(argv[2], nullptr) : 300.0;
    int max_threads = omp_get_max_threads();
    std::printf("x_max = %llu, t_max = %.0f, max threads = %d\n\n",
                (unsigned long long)x_max, t_max, max_threads);

    auto grid = engine::default_grid(x_max);

    double t_ref = time_s([&] {
        auto primes = engine::reference::primes_up_to(x_max);
        volatile auto cp = engine::reference::checkpoint_at(x_max, primes);
        (void)cp;
    });
    std::printf("reference sieve + single checkpoint      %8.3f s\n", t_ref);

    engine::StreamOptions o1;
    o1.workers = 1;
    double t_1 = time_s([&] { auto r = engine::stream_checkpoints(x_max, grid, o1); });
    std::printf("streaming engine, 1 worker               %8.3f s  (%zu checkpoints)\n", t_1,
                grid.size());

    engine::StreamOptions on;
    on.workers = max_threads;
    double t_n = time_s([&] { auto r = engine::stream_checkpoints(x_max, grid, on); });
    std::printf("streaming engine, %d worker(s)            %8.3f s  (speedup %.2fx)\n\n",
                max_threads, t_n, t_1 / t_n);

    zeros::ScanOptions s1;
    s1.workers = 1;
    double z_1 = time_s([&] { auto z = zeros::zeta_zero_scan(t_max, s1); });
    std::printf("zeta zero scan to %4.0f, 1 worker         %8.3f s\n", t_max, z_1);
    zeros::ScanOptions sn;
    sn.workers = max_threads;
    double z_n = time_s([&] { auto z = zeros::zeta_zero_scan(t_max, sn); });
    std::printf("zeta zero scan to %4.0f, %d worker(s)      %8.3f s  (speedup %.2fx)\n", t_max,
                max_threads, z_n, z_1 / z_n);
    return 0;
}
