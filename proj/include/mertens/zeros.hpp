// zeros.hpp
//
// Nontrivial-zero data: sign-change scanning of the rotated completed
// functions for zeta and primitive Dirichlet characters, ingestion and
// validation of zero-list files, the explicit zero-counting bracket, and
// tail brackets for weighted zero sums.
//
// Scanning partitions the grid into independently evaluated points and a
// deterministic serial sweep, so results do not depend on worker count.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mertens/arith.hpp"
#include "mertens/errors.hpp"

namespace mertens::zeros {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using cplx = std::complex<double>;

cplx log_gamma(cplx z);

// Riemann-Siegel theta: arg Gamma(1/4 + it/2) - (t/2) log pi.
double riemann_siegel_theta(double t);

// Hardy Z(t) = e^{i theta(t)} zeta(1/2 + it); real for real t.
double zeta_Z(double t);

// Identifies which L-function a zero list belongs to.
struct LFunctionId {
    enum class Kind { Zeta, Discriminant, ModIndex } kind = Kind::Zeta;
    i64 d = 0;        // Kind::Discriminant
    u64 q = 0;        // Kind::ModIndex
    u64 index = 0;    // character index within characters(q)
    std::string label() const;
    bool operator==(const LFunctionId&) const = default;
};

enum class Source { Ingested, Scanned };

struct ZeroList {
    LFunctionId id;
    std::vector<double> ordinates;   // strictly increasing positive ordinates
    double t_max = 0;                // verified coverage height
    Source source = Source::Scanned;
    bool suspected_missing = false;  // completeness audit failed
    std::string audit_note;

    size_t count() const { return ordinates.size(); }
    // sum of w(gamma) over this list's ordinates
    double weighted_sum(double (*w)(double)) const;
};

// Explicit bracket on N(T, chi) = #{rho : 0<beta<1, |gamma| <= T} for a
// character of conductor q > 1; requires T >= 5/7 and ell > 1.567.
struct CountBracket {
    double T = 0;
    double center = 0;   // (T/pi) log(qT/2 pi e) - chi(-1)/4
    double width = 0;    // 0.22737 ell + 2 log(1+ell) - 0.5
    double lower = 0;    // max(0, center - width)
    double upper = 0;
    double ell = 0;      // log(q(T+2)/2 pi)
};

CountBracket bmor_bracket(double T, u64 q, int kappa);

// Least non-negative even integer >= (T/pi) log(qT/2 pi e) - 0.25 - width.
i64 n_tilde(double T, u64 q);

// ---- zero-list files ----
//
// UTF-8 text; '#'-prefixed header lines, then one decimal ordinate per
// line, ascending:
//   # lfunction: zeta            (or "# discriminant: -4"
//                                 or "# modulus: 5, character-index: 2")
//   # height: 100.0              (optional; defaults to last ordinate)
//   14.134725142
//   ...

ZeroList ingest_zero_list(const std::string& path,
                          std::optional<LFunctionId> expect = std::nullopt);
void write_zero_list(const std::string& path, const ZeroList& zl);

// Validates monotonicity and the count against the applicable bracket
// (explicit bracket for conductor > 1, Riemann-von Mangoldt with +-5 slack for
// zeta). Throws UndecidedError on violation.
void validate_zero_list(const ZeroList& zl);

// ---- scanning ----

struct ScanOptions {
    double step = 0.02;
    double bisect_tol = 1e-7;
    int max_refit = 3;      // halvings of the step when the audit fails
    int workers = 0;
};

// All ordinates in (0, t_max] of zeta, by sign changes of Z(t);
// completeness checked against the Riemann-von Mangoldt count.
ZeroList zeta_zero_scan(double t_max, const ScanOptions& opt = {});

// Real primitive character attached to a fundamental discriminant d,
// |d| <= 100 at desk scale (larger allowed, cost grows with |d| t_max).
ZeroList l_zero_scan(i64 d, double t_max, const ScanOptions& opt = {});

// Positive ordinates of one primitive non-principal character; sound for
// complex characters as well (root number from the Gauss sum; used to
// produce bundled data). The completeness audit for a complex character
// requires its conjugate: scan_conjugate_pair audits jointly.
ZeroList character_zero_scan(const arith::DirichletCharacter& chi, double t_max,
                             const ScanOptions& opt = {});
std::pair<ZeroList, ZeroList> scan_conjugate_pair(const arith::DirichletCharacter& chi,
                                                  double t_max,
                                                  const ScanOptions& opt = {});

// ---- tail brackets ----

struct Bracket {
    double lo = 0, hi = 0;
    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

enum class TailWeight {
    InvRhoSq,       // w(t) = 1/(1/4 + t^2)        ( = 1/|rho(rho-1)| on the line)
    InvRhoRhoPlus   // w(t) = ((1/4+t^2)(9/4+t^2))^{-1/2}  ( = 1/|rho(rho+1)| )
};

double tail_weight(TailWeight w, double t);

// Bracket of sum_{|gamma| > T} w(|gamma|) for one character of conductor
// q > 1 and parity kappa, given the exact both-sign count at T (pass -1 to
// use the bracket's lower bound instead).
Bracket tail_bracket(double T, u64 q, int kappa, TailWeight w, double n_at_T = -1);

// Same for zeta, using the Riemann-von Mangoldt main term with a +-5 slack
// per half-plane on the positive-ordinate count.
Bracket tail_bracket_zeta(double T, TailWeight w, double n_at_T = -1);

} // namespace mertens::zeros
