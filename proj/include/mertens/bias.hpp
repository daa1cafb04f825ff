// bias.hpp
//
// The bias constants B_1, B_{chi_d}, B_q by closed form and by zero sums
// with rigorous tail brackets; the finite searches for the discriminant
// set, the modulus set, and the residue-pair table; exclusion certificates;
// and the calibrated negativity criterion with its tau calibration.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mertens/arith.hpp"
#include "mertens/zeros.hpp"

namespace mertens::bias {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct BracketedValue {
    double lo = 0, hi = 0;
    std::string provenance;
    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

enum class Route { ClosedForm, ZeroSum, Both };

struct BiasConstant {
    std::string subject;
    BracketedValue value;
    Route route = Route::ClosedForm;
};

// B_1 = 2 + gamma_E - log 4 pi = 0.0461...
double b1_value();
BiasConstant b1();
// (2 - B_1)/(2 + B_1) = 0.9548...; its square is the localization constant.
double b1_localization_ratio();

// Zero-sum route: 2 sum w(gamma) over the list plus a bracketed tail.
BracketedValue b1_zero_sum(const zeros::ZeroList& zeta_list);

// B_{chi_d} = log(|d|/pi) + 2 L'/L(1, chi_d) - gamma_E - 2(1-kappa) log 2.
BiasConstant b_chi(i64 d);
BracketedValue b_chi_zero_sum(const zeros::ZeroList& zl);

// One primitive non-principal character (complex allowed):
// B_chi = log(f/pi) + digamma((1+kappa)/2) + 2 Re L'/L(1, chi).
double b_character(const arith::DirichletCharacter& chi_primitive, double* err = nullptr);

// B_q = B_1 + sum_{chi != chi0 mod q} B_{chi*}; B_q = B_{q/2} for q = 2 (mod 4).
BiasConstant b_q(u64 q);

enum class Verdict { Member, NonMember, Undecided };

struct SubjectReport {
    i64 d = 0;
    u64 q = 0, a = 0;
    BracketedValue value;
    double threshold = 0;
    Verdict verdict = Verdict::Undecided;
};

struct SearchReport {
    std::vector<SubjectReport> members;
    std::vector<SubjectReport> excluded;
    std::vector<SubjectReport> undecided;
    size_t scanned = 0;
};

// All fundamental d with 1 < |d| <= bound classified by B_{chi_d} < 2.
SearchReport search_discriminants(i64 bound);

// All q <= bound classified by B_q < 2 C(q,1); q = 2 (mod 4) reuses q/2.
SearchReport search_moduli(u64 bound);

// ---- exclusion certificates ----

// int_T^{t_stop} 2 t Ntilde(t)/(1/4+t^2)^2 dt, exact piecewise in the even
// steps of Ntilde (the dropped remainder is positive, so this is a lower
// bound for the full integral).
double ntilde_tail_integral(u64 q, double T, double t_stop = 2e4);

struct DiscriminantCertificate {
    i64 d = 0;
    double T = 0;
    double integral = 0;   // lower bound for B_{chi_d}
    bool excludes = false; // integral > 2
};
DiscriminantCertificate discriminant_certificate(i64 d, double T = 0.928);

struct ModulusCertificate {
    u64 q = 0;
    double n_over_c = 0;   // n(q) / C(q,1)
    double integral = 0;   // per-character lower bound (T = 4 form)
    double lower_bound = 0;// n(q) * integral <= B_q
    bool excludes = false; // lower_bound > 2 C(q,1)
};
ModulusCertificate modulus_certificate(u64 q);

struct QuadraticFieldCheck {
    double combined = 0;   // B_1 + B_{chi_d}
    bool verdict = false;  // combined < 2
};
QuadraticFieldCheck quadratic_field_check(i64 d);

// ---- the residue-pair criterion and its calibration ----

// Zero lists keyed by L-function, loaded from a directory of the documented
// text format.
class ZeroStore {
public:
    void add(zeros::ZeroList zl);
    void load_directory(const std::string& dir);
    const zeros::ZeroList* find(const zeros::LFunctionId& id) const;
    // primitive non-principal character -> its list (tries both the
    // modulus/index key and the discriminant key for real characters)
    const zeros::ZeroList* find_character(const arith::DirichletCharacter& chi_primitive) const;
    size_t size() const { return lists_.size(); }

private:
    std::map<std::string, zeros::ZeroList> lists_;
};

// B' = sum over all zeros of 1/|rho(rho+1)|, bracketed (partial + tail).
BracketedValue b_prime_zeta(const zeros::ZeroList& zeta_list);
BracketedValue b_prime_character(const arith::DirichletCharacter& chi_primitive,
                                 const ZeroStore& zs);

struct DprimeVerdict {
    Verdict verdict = Verdict::Undecided;
    BracketedValue b_prime;
    double threshold = 0;
    std::string detail;
};

// d in D' iff B'_{chi_d} < tau; (q,a) in the table iff
// sum_{chi mod q} B'_{chi*} < tau * C(q,a) (zero when a is a non-residue).
DprimeVerdict dprime_discriminant(i64 d, const ZeroStore& zs, double tau);
DprimeVerdict table3_pair(u64 q, u64 a, const ZeroStore& zs, double tau);

// Truncated-explicit-formula reconstruction of int_2^X pi(x, chi_d) dx on a
// log grid, as an empirical negativity probe.
struct ReconstructionPoint {
    double X;
    double oscillation;   // zero-sum part
    double main;          // deterministic (prime-square) part, negative
    double value;
};
std::vector<ReconstructionPoint> dprime_reconstruction(const zeros::ZeroList& zl,
                                                       double x_lo, double x_hi,
                                                       int points);

// The threshold coefficient adopted for the residue-pair criterion.
inline constexpr double kTauResiduePairs = 2.0;

struct TauEvidence {
    std::string subject;
    bool member;            // published verdict
    double b_over_c_lo, b_over_c_hi;
};

struct TauCalibration {
    double lower = 0;       // every tau in (lower, upper] reproduces the evidence
    double upper = 0;
    bool decided = false;   // adopted value lies in the interval
    double adopted = kTauResiduePairs;
    std::vector<TauEvidence> evidence;
    std::string report;
};

// Calibrates tau against whatever published-verdict subjects have zero data
// in the store: the six table rows (q in {3,4,5,8,12,24}), the member
// extremes of the discriminant question, and non-member probes beyond them.
TauCalibration calibrate_tau(const ZeroStore& zs);

} // namespace mertens::bias
