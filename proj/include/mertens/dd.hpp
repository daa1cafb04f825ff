// dd.hpp
//
// Double-double arithmetic: an unevaluated sum hi + lo of two doubles with
// |lo| <= ulp(hi)/2, giving ~31 significant decimal digits. Used for the
// streaming prime-sum accumulators (10^8 summands need better than plain
// double) and for the high-precision constants.
//
// Requires strict IEEE double semantics; do not compile with -ffast-math.

#pragma once

#include <cmath>

namespace mertens {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
    double to_double() const { return hi + lo; }
};

namespace detail {

// Knuth TwoSum: a + b = s + e exactly.
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

// Fast TwoSum, valid when |a| >= |b|.
inline void quick_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
}

// a * b = p + e exactly (FMA).
inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

} // namespace detail

inline dd operator+(dd a, double b) {
    double s, e;
    detail::two_sum(a.hi, b, s, e);
    e += a.lo;
    detail::quick_two_sum(s, e, s, e);
    return {s, e};
}

inline dd operator+(dd a, dd b) {
    double s, e;
    detail::two_sum(a.hi, b.hi, s, e);
    e += a.lo + b.lo;
    detail::quick_two_sum(s, e, s, e);
    return {s, e};
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }
inline dd operator-(dd a, double b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    double p, e;
    detail::two_prod(a.hi, b.hi, p, e);
    e += a.hi * b.lo + a.lo * b.hi;
    detail::quick_two_sum(p, e, p, e);
    return {p, e};
}

inline dd operator*(dd a, double b) { return a * dd(b); }

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    double s, e;
    detail::quick_two_sum(q1, q2, s, e);
    dd q{s, e};
    return q + q3;
}

inline dd operator/(dd a, double b) { return a / dd(b); }

inline dd& operator+=(dd& a, double b) { a = a + b; return a; }
inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }

// exp of a dd whose magnitude fits comfortably in double; the lo correction
// enters only at first order, adequate for |lo| <~ 1e-12.
inline dd dd_exp(dd a) {
    double e = std::exp(a.hi);
    return dd(e) * (dd(1.0) + a.lo);
}

// Constants to double-double precision.
namespace ddc {
inline constexpr dd gamma_e   {0.5772156649015329, -4.942915152430645e-18};
inline constexpr dd log2      {0.6931471805599453, 2.3190468138462996e-17};
inline constexpr dd logpi     {1.1447298858494002, 1.0265951162707826e-17};
inline constexpr dd log_4pi   {2.5310242469692907, 5.664688743963382e-17};
inline constexpr dd exp_gamma {1.781072417990198, -1.2758024019837578e-17};
} // namespace ddc

} // namespace mertens
