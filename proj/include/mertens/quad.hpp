// quad.hpp
//
// Gauss-Legendre quadrature (8- and 16-point) and a nested adaptive driver
// for smooth integrands on finite intervals.

#pragma once

#include <cmath>
#include <utility>

namespace mertens::quad {

// 8-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
inline constexpr double kGL8X[] = {0.1834346424956498, 0.5255324099163290,
                                   0.7966664774136267, 0.9602898564975363};
inline constexpr double kGL8W[] = {0.3626837833783620, 0.3137066458778873,
                                   0.2223810344533745, 0.1012285362903763};

inline constexpr double kGL16X[] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr double kGL16W[] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename F>
double gl8(F&& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a), s = 0.0;
    for (int i = 0; i < 4; ++i)
        s += kGL8W[i] * (f(c + h * kGL8X[i]) + f(c - h * kGL8X[i]));
    return s * h;
}

template <typename F>
double gl16(F&& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a), s = 0.0;
    for (int i = 0; i < 8; ++i)
        s += kGL16W[i] * (f(c + h * kGL16X[i]) + f(c - h * kGL16X[i]));
    return s * h;
}

namespace detail {
template <typename F>
double adaptive_rec(F& f, double a, double b, double tol, int depth) {
    double c8 = gl8(f, a, b), c16 = gl16(f, a, b);
    if (std::abs(c16 - c8) <= tol || depth >= 28) return c16;
    double m = 0.5 * (a + b);
    return adaptive_rec(f, a, m, 0.5 * tol, depth + 1) +
           adaptive_rec(f, m, b, 0.5 * tol, depth + 1);
}
} // namespace detail

// Nested GL8/GL16 adaptive quadrature; absolute tolerance.
template <typename F>
double adaptive(F&& f, double a, double b, double tol) {
    return detail::adaptive_rec(f, a, b, tol, 0);
}

// Integral over [a, infinity) of a decaying integrand, by dyadic blocks.
template <typename F>
double to_infinity(F&& f, double a, double tol) {
    double total = 0.0, lo = a, hi = std::max(2.0 * a, a + 8.0);
    for (int blocks = 0; blocks < 80; ++blocks) {
        double part = adaptive(f, lo, hi, tol * 0.25);
        total += part;
        if (std::abs(part) < tol && blocks > 2) break;
        lo = hi;
        hi *= 2.0;
    }
    return total;
}

} // namespace mertens::quad
