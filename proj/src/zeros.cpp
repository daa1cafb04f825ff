// zeros.cpp

#include "mertens/zeros.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "mertens/quad.hpp"
#include "mertens/specfun.hpp"

namespace mertens::zeros {

namespace {
constexpr double kLog2Pi = 1.8378770664093455;
constexpr double kPi = 3.141592653589793;
} // namespace

cplx log_gamma(cplx z) {
    cplx shift(0.0);
    int guard = 0;
    while (std::abs(z) < 12.0 && guard++ < 80) {
        shift -= std::log(z);
        z += 1.0;
    }
    cplx iz = 1.0 / z, iz2 = iz * iz;
    cplx r = (z - 0.5) * std::log(z) - z + 0.5 * kLog2Pi;
    static const double c[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
                               1.0 / 1188, -691.0 / 360360, 1.0 / 156,
                               -3617.0 / 122400};
    cplx p = iz;
    for (double ck : c) {
        r += ck * p;
        p *= iz2;
    }
    return r + shift;
}

double riemann_siegel_theta(double t) {
    return log_gamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
}

double zeta_Z(double t) {
    cplx s(0.5, t);
    cplx z = sf::zeta(s);
    double th = riemann_siegel_theta(t);
    cplx r = std::exp(cplx(0.0, th)) * z;
    return r.real();
}

std::string LFunctionId::label() const {
    switch (kind) {
        case Kind::Zeta: return "zeta";
        case Kind::Discriminant: return "discriminant " + std::to_string(d);
        case Kind::ModIndex:
            return "modulus " + std::to_string(q) + " index " + std::to_string(index);
    }
    return "?";
}

double ZeroList::weighted_sum(double (*w)(double)) const {
    double s = 0;
    for (double g : ordinates) s += w(g);
    return s;
}

CountBracket bmor_bracket(double T, u64 q, int kappa) {
    if (q <= 1) throw PreconditionError("bmor_bracket: conductor q > 1 required");
    if (T < 5.0 / 7.0) throw PreconditionError("bmor_bracket: T < 5/7");
    double ell = std::log((double)q * (T + 2.0) / (2.0 * kPi));
    if (ell <= 1.567) throw PreconditionError("bmor_bracket: ell <= 1.567");
    CountBracket b;
    b.T = T;
    b.ell = ell;
    double chi_m1 = kappa == 0 ? 1.0 : -1.0;
    b.center = T / kPi * std::log((double)q * T / (2.0 * kPi * M_E)) - chi_m1 / 4.0;
    b.width = 0.22737 * ell + 2.0 * std::log1p(ell) - 0.5;
    b.lower = std::max(0.0, b.center - b.width);
    b.upper = b.center + b.width;
    return b;
}

i64 n_tilde(double T, u64 q) {
    if (q <= 1) throw PreconditionError("n_tilde: conductor q > 1 required");
    if (T < 5.0 / 7.0) throw PreconditionError("n_tilde: T < 5/7");
    double ell = std::log((double)q * (T + 2.0) / (2.0 * kPi));
    if (ell <= 1.567) throw PreconditionError("n_tilde: ell <= 1.567");
    double expr = T / kPi * std::log((double)q * T / (2.0 * kPi * M_E)) - 0.25 -
                  (0.22737 * ell + 2.0 * std::log1p(ell) - 0.5);
    if (expr <= 0) return 0;
    return 2 * (i64)std::ceil(expr / 2.0);
}

// ---- file I/O ----

ZeroList ingest_zero_list(const std::string& path, std::optional<LFunctionId> expect) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open zero list: " + path);
    ZeroList zl;
    zl.source = Source::Ingested;
    bool have_id = false, have_height = false;
    std::string line;
    long line_no = 0;
    double prev = 0.0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            auto trim = [](std::string s) {
                size_t a = s.find_first_not_of(" \t");
                size_t b = s.find_last_not_of(" \t");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            body = trim(body);
            auto starts = [&](const char* p) { return body.rfind(p, 0) == 0; };
            if (body == "zeta" || starts("lfunction:")) {
                zl.id.kind = LFunctionId::Kind::Zeta;
                have_id = true;
            } else if (starts("discriminant:")) {
                zl.id.kind = LFunctionId::Kind::Discriminant;
                zl.id.d = std::stoll(trim(body.substr(13)));
                have_id = true;
            } else if (starts("modulus:")) {
                // "modulus: q, character-index: j"
                u64 q = 0, idx = 0;
                if (std::sscanf(body.c_str(), "modulus: %llu, character-index: %llu",
                                (unsigned long long*)&q, (unsigned long long*)&idx) != 2)
                    throw ParseError("bad modulus header in " + path, line_no);
                zl.id.kind = LFunctionId::Kind::ModIndex;
                zl.id.q = q;
                zl.id.index = idx;
                have_id = true;
            } else if (starts("height:")) {
                zl.t_max = std::stod(trim(body.substr(7)));
                have_height = true;
            } else if (starts("source:")) {
                // informational
            } else {
                throw ParseError("unrecognized header '" + body + "' in " + path, line_no);
            }
            continue;
        }
        double v;
        try {
            size_t used = 0;
            v = std::stod(line, &used);
            if (used == 0) throw std::invalid_argument("empty");
        } catch (const std::exception&) {
            throw ParseError("not a number: '" + line + "' in " + path, line_no);
        }
        if (!(v > 0)) throw ParseError("ordinate must be positive in " + path, line_no);
        if (!zl.ordinates.empty() && v <= prev + 1e-10)
            throw ParseError("ordinates must be strictly increasing in " + path, line_no);
        zl.ordinates.push_back(v);
        prev = v;
    }
    if (!have_id) throw ParseError("missing lfunction header in " + path, 0);
    if (!have_height) zl.t_max = zl.ordinates.empty() ? 0.0 : zl.ordinates.back();
    if (expect && !(zl.id == *expect))
        throw IoError("zero list " + path + " is for " + zl.id.label() + ", expected " +
                      expect->label());
    return zl;
}

void write_zero_list(const std::string& path, const ZeroList& zl) {
    std::ostringstream out;
    switch (zl.id.kind) {
        case LFunctionId::Kind::Zeta: out << "# lfunction: zeta\n"; break;
        case LFunctionId::Kind::Discriminant: out << "# discriminant: " << zl.id.d << "\n"; break;
        case LFunctionId::Kind::ModIndex:
            out << "# modulus: " << zl.id.q << ", character-index: " << zl.id.index << "\n";
            break;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "# height: %.6f\n", zl.t_max);
    out << buf;
    out << "# source: " << (zl.source == Source::Scanned ? "scanned" : "ingested") << "\n";
    for (double g : zl.ordinates) {
        std::snprintf(buf, sizeof buf, "%.9f\n", g);
        out << buf;
    }
    std::ofstream f(path);
    if (!f) throw IoError("cannot write zero list: " + path);
    f << out.str();
    if (!f) throw IoError("write failed: " + path);
}

namespace {

// conductor and parity for an id (zeta handled separately)
std::pair<u64, int> conductor_parity(const LFunctionId& id) {
    if (id.kind == LFunctionId::Kind::Discriminant) {
        u64 q = (u64)(id.d < 0 ? -id.d : id.d);
        return {q, id.d < 0 ? 1 : 0};
    }
    auto grp = arith::CharacterGroup::make(id.q);
    auto chi = grp->character(id.index);
    auto prim = chi.primitive();
    return {prim.modulus(), prim.parity()};
}

} // namespace

void validate_zero_list(const ZeroList& zl) {
    if (zl.ordinates.empty()) return;
    if (zl.ordinates.back() > zl.t_max + 1e-9)
        throw UndecidedError("zero list exceeds declared height for " + zl.id.label());
    if (zl.id.kind == LFunctionId::Kind::Zeta) {
        double expected = riemann_siegel_theta(zl.t_max) / kPi + 1.0;
        if (std::abs((double)zl.ordinates.size() - expected) > 5.0)
            throw UndecidedError("zeta zero count " + std::to_string(zl.ordinates.size()) +
                                 " outside Riemann-von Mangoldt slack (expected about " +
                                 std::to_string(expected) + ")");
        return;
    }
    auto [q, kappa] = conductor_parity(zl.id);
    if (q == 1) return;  // principal: induced by zeta; caller validates as zeta
    auto br = bmor_bracket(zl.t_max, q, kappa);
    // The bracket counts both signs. A real character's list carries the
    // positive ordinates of a symmetric set, so its both-sign count is twice
    // the list size. A single complex-character list is one half of a
    // conjugate pair; only weak individual bounds apply (the pairwise count
    // is audited where pairs are consumed).
    bool symmetric = zl.id.kind == LFunctionId::Kind::Discriminant;
    if (zl.id.kind == LFunctionId::Kind::ModIndex) {
        auto grp = arith::CharacterGroup::make(zl.id.q);
        symmetric = grp->character(zl.id.index).is_real();
    }
    double n = symmetric ? 2.0 * (double)zl.ordinates.size() : (double)zl.ordinates.size();
    double lo = symmetric ? br.lower : std::max(0.0, br.lower - br.upper);
    if (n < lo - 1e-9 || n > br.upper + 1e-9)
        throw UndecidedError("zero count for " + zl.id.label() + " violates the explicit bracket [" +
                             std::to_string(br.lower) + ", " + std::to_string(br.upper) + "]");
}

// ---- scanning ----

namespace {

// Deterministic grid scan + bisection for a real-valued function.
std::vector<double> sign_scan(const std::function<double(double)>& f, double t_lo,
                              double t_hi, double step, double tol, int workers) {
    const long n = (long)std::ceil((t_hi - t_lo) / step);
    std::vector<double> vals(n + 1);
    int nw = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(nw)
    for (long i = 0; i <= n; ++i) vals[i] = f(std::min(t_lo + i * step, t_hi));

    std::vector<long> hits;
    for (long i = 0; i < n; ++i)
        if (vals[i] != 0.0 && vals[i + 1] != 0.0 && (vals[i] < 0) != (vals[i + 1] < 0))
            hits.push_back(i);

    std::vector<double> roots(hits.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(nw)
    for (size_t k = 0; k < hits.size(); ++k) {
        long i = hits[k];
        double a = t_lo + i * step, b = std::min(t_lo + (i + 1) * step, t_hi);
        double fa = vals[i];
        while (b - a > tol) {
            double m = 0.5 * (a + b), fm = f(m);
            if (fm == 0.0) { a = b = m; break; }
            if ((fm < 0) == (fa < 0)) { a = m; fa = fm; }
            else b = m;
        }
        roots[k] = 0.5 * (a + b);
    }
    return roots;
}

} // namespace

ZeroList zeta_zero_scan(double t_max, const ScanOptions& opt) {
    if (t_max > 1000.0) throw PreconditionError("zeta_zero_scan: t_max <= 1000 (desk scale)");
    ZeroList zl;
    zl.id.kind = LFunctionId::Kind::Zeta;
    zl.t_max = t_max;
    zl.source = Source::Scanned;
    if (t_max < 14.0) return zl;

    double step = std::max(opt.step, 0.04);
    double expected = riemann_siegel_theta(t_max) / kPi + 1.0;
    for (int attempt = 0;; ++attempt) {
        zl.ordinates = sign_scan([](double t) { return zeta_Z(t); }, 1.0, t_max, step,
                                 opt.bisect_tol * 0.1, opt.workers);
        if (std::abs((double)zl.ordinates.size() - expected) <= 5.0) break;
        if (attempt >= opt.max_refit) {
            zl.suspected_missing = true;
            zl.audit_note = "count " + std::to_string(zl.ordinates.size()) +
                            " vs Riemann-von Mangoldt " + std::to_string(expected);
            break;
        }
        step *= 0.5;
    }
    return zl;
}

namespace {

// Cached evaluator for L(1/2 + it, chi) along the critical line: per-residue
// log and inverse-square-root tables are built once, so each evaluation is
// one sincos per series term. Deflated Euler-Maclaurin, poles cancelled by
// sum chi(a) = 0.
class LineEvaluator {
public:
    LineEvaluator(const arith::DirichletCharacter& chi, double t_max) : q_(chi.modulus()) {
        n_max_ = (int)std::ceil(0.23 * t_max) + 2 * kK + 8;
        for (u64 a = 1; a <= q_; ++a) {
            auto v = chi.value(a);
            if (!v) continue;
            Residue r;
            r.chi = cplx(v->real(), v->imag());
            double alpha = (double)a / (double)q_;
            r.logv.resize(n_max_ + 1);
            r.rsv.resize(n_max_ + 1);
            for (int n = 0; n <= n_max_; ++n) {
                double x = n + alpha;
                r.logv[n] = std::log(x);
                r.rsv[n] = 1.0 / std::sqrt(x);
            }
            residues_.push_back(std::move(r));
        }
        log_q_ = std::log((double)q_);
    }

    cplx eval(double t) const {
        const cplx s(0.5, t);
        const int N = std::min(n_max_, std::max(20, (int)std::ceil(0.23 * std::abs(t)) + 2 * kK + 4));
        cplx total(0);
        for (const auto& r : residues_) {
            cplx sum(0);
            for (int n = 0; n < N; ++n) {
                double ph = -t * r.logv[n];
                sum += cplx(r.rsv[n] * std::cos(ph), r.rsv[n] * std::sin(ph));
            }
            const double w = r.logv[N];
            const cplx pNs = cplx(r.rsv[N] * std::cos(-t * w), r.rsv[N] * std::sin(-t * w));
            // [(N+a)^{1-s} - 1]/(s-1) = -w phi1((1-s) w)
            cplx x = cplx(1.0) - s;
            cplx f, fd;
            phi1c(x * w, f, fd);
            sum -= f * w;
            sum += pNs * 0.5;
            cplx pk = pNs * (r.rsv[N] * r.rsv[N]);  // (N+a)^{-s-1}
            const double inv2 = r.rsv[N] * r.rsv[N] * r.rsv[N] * r.rsv[N];
            cplx poch = s;
            for (int k = 1; k <= kK; ++k) {
                sum += poch * pk * kBernFac[k - 1];
                if (k < kK) {
                    poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
                    pk *= inv2;
                }
            }
            total += r.chi * sum;
        }
        return std::exp(-s * log_q_) * total;
    }

private:
    static constexpr int kK = 13;
    static const double kBernFac[kK];

    static void phi1c(cplx z, cplx& val, cplx& der) {
        if (std::abs(z) < 0.5) {
            val = cplx(1);
            der = cplx(0.5);
            cplx term(1);
            double fact = 1;
            for (int m = 1; m <= 18; ++m) {
                term *= z;
                fact *= (m + 1);
                val += term / fact;
                der += term * (double(m + 1) / (fact * (m + 2)));
            }
        } else {
            cplx em1 = std::exp(z) - cplx(1);
            val = em1 / z;
            der = (std::exp(z) - val) / z;
        }
    }

    struct Residue {
        cplx chi;
        std::vector<double> logv, rsv;
    };
    u64 q_;
    int n_max_;
    double log_q_;
    std::vector<Residue> residues_;
};

const double LineEvaluator::kBernFac[LineEvaluator::kK] = {
    1.0 / 6 / 2,                       // B_2/2!
    -1.0 / 30 / 24,                    // B_4/4!
    1.0 / 42 / 720,
    -1.0 / 30 / 40320,
    5.0 / 66 / 3628800,
    -691.0 / 2730 / 479001600.0,
    7.0 / 6 / 87178291200.0,
    -3617.0 / 510 / 20922789888000.0,
    43867.0 / 798 / 6402373705728000.0,
    -174611.0 / 330 / 2432902008176640000.0,
    854513.0 / 138 / 1.1240007277776077e21,
    -236364091.0 / 2730 / 6.204484017332394e23,
    8553103.0 / 6 / 4.0329146112660565e26};

struct RotatedL {
    u64 q;
    int kappa;
    double arg_eps_half;   // arg(root number)/2
    double log_q_pi;
    std::shared_ptr<LineEvaluator> ev;

    double Z(double t) const {
        cplx L = ev->eval(t);
        double phase = 0.5 * t * log_q_pi +
                       log_gamma(cplx(0.25 + 0.5 * kappa, 0.5 * t)).imag() - arg_eps_half;
        return (std::exp(cplx(0.0, phase)) * L).real();
    }
};

RotatedL make_rotated(const arith::DirichletCharacter& chi, double t_max) {
    if (!chi.is_primitive() || chi.is_principal())
        throw PreconditionError("zero scan: character must be primitive and non-principal");
    u64 q = chi.modulus();
    cplx tau(0.0);
    for (u64 a = 1; a <= q; ++a) {
        auto v = chi.value(a);
        if (!v) continue;
        double ang = 2.0 * kPi * (double)a / (double)q;
        tau += cplx(v->real(), v->imag()) * cplx(std::cos(ang), std::sin(ang));
    }
    double sq = std::sqrt((double)q);
    if (std::abs(std::abs(tau) - sq) > 1e-6 * sq)
        throw UndecidedError("Gauss sum modulus check failed; character not primitive?");
    int kappa = chi.parity();
    cplx i_k = kappa == 0 ? cplx(1, 0) : cplx(0, 1);
    cplx eps = tau / (i_k * sq);
    return RotatedL{q, kappa, 0.5 * std::arg(eps), std::log((double)q / kPi),
                    std::make_shared<LineEvaluator>(chi, t_max)};
}

ZeroList scan_rotated(const RotatedL& rot, const LFunctionId& id, double t_max,
                      const ScanOptions& opt, double expected, double slack) {
    ZeroList zl;
    zl.id = id;
    zl.t_max = t_max;
    zl.source = Source::Scanned;
    double step = opt.step;
    for (int attempt = 0;; ++attempt) {
        zl.ordinates = sign_scan([&](double t) { return rot.Z(t); }, 1e-4, t_max, step,
                                 opt.bisect_tol * 0.1, opt.workers);
        if (expected < 0 || std::abs((double)zl.ordinates.size() - expected) <= slack) break;
        if (attempt >= opt.max_refit) {
            zl.suspected_missing = true;
            zl.audit_note = "count " + std::to_string(zl.ordinates.size()) +
                            " vs expected " + std::to_string(expected);
            break;
        }
        step *= 0.5;
    }
    return zl;
}

} // namespace

ZeroList l_zero_scan(i64 d, double t_max, const ScanOptions& opt) {
    if (!arith::is_fundamental(d)) throw PreconditionError("l_zero_scan: d not fundamental");
    auto chi = arith::CharacterGroup::kronecker_character(d);
    auto rot = make_rotated(chi, t_max);
    LFunctionId id;
    id.kind = LFunctionId::Kind::Discriminant;
    id.d = d;
    // real character: both-sign count is twice the positive count
    auto br = bmor_bracket(t_max, rot.q, rot.kappa);
    ZeroList zl = scan_rotated(rot, id, t_max, opt, br.center / 2.0, br.width / 2.0 + 0.51);
    if (zl.suspected_missing)
        zl.audit_note += " (bracket [" + std::to_string(br.lower) + ", " +
                         std::to_string(br.upper) + "] halved)";
    return zl;
}

ZeroList character_zero_scan(const arith::DirichletCharacter& chi, double t_max,
                             const ScanOptions& opt) {
    auto rot = make_rotated(chi, t_max);
    LFunctionId id;
    id.kind = LFunctionId::Kind::ModIndex;
    id.q = chi.modulus();
    id.index = chi.index();
    if (chi.is_real()) {
        auto br = bmor_bracket(t_max, rot.q, rot.kappa);
        return scan_rotated(rot, id, t_max, opt, br.center / 2.0, br.width / 2.0 + 0.51);
    }
    return scan_rotated(rot, id, t_max, opt, -1.0, 0.0);
}

std::pair<ZeroList, ZeroList> scan_conjugate_pair(const arith::DirichletCharacter& chi,
                                                  double t_max, const ScanOptions& opt) {
    auto grp = arith::CharacterGroup::make(chi.modulus());
    auto chibar = grp->character(chi.conjugate_index());
    ZeroList a = character_zero_scan(chi, t_max, opt);
    ZeroList b = character_zero_scan(chibar, t_max, opt);
    // joint audit: both-sign count of chi = pos(chi) + pos(chibar)
    auto br = bmor_bracket(t_max, chi.primitive().modulus(), chi.parity());
    double n = (double)(a.count() + b.count());
    if (n < br.lower - 1e-9 || n > br.upper + 1e-9) {
        a.suspected_missing = b.suspected_missing = true;
        a.audit_note = b.audit_note =
            "pair count " + std::to_string((size_t)n) + " outside bracket [" +
            std::to_string(br.lower) + ", " + std::to_string(br.upper) + "]";
    }
    return {std::move(a), std::move(b)};
}

// ---- tail brackets ----

double tail_weight(TailWeight w, double t) {
    double a = 0.25 + t * t;
    if (w == TailWeight::InvRhoSq) return 1.0 / a;
    return 1.0 / std::sqrt(a * (2.25 + t * t));
}

namespace {

double weight_neg_deriv(TailWeight w, double t) {
    double a = 0.25 + t * t;
    if (w == TailWeight::InvRhoSq) return 2.0 * t / (a * a);
    double b = 2.25 + t * t;
    return tail_weight(w, t) * (t / a + t / b);
}

// sum_{|gamma|>T} w(|gamma|) = int_T^inf (-w'(t)) (N(t) - N(T)) dt; bound it
// by bounding N(t) - N(T) pointwise.
template <typename DeltaFn>
double tail_integral(TailWeight w, double T, DeltaFn&& delta_n) {
    auto f = [&](double t) { return weight_neg_deriv(w, t) * std::max(0.0, delta_n(t)); };
    return quad::to_infinity(f, T, 1e-14);
}

} // namespace

Bracket tail_bracket(double T, u64 q, int kappa, TailWeight w, double n_at_T) {
    auto br = bmor_bracket(T, q, kappa);  // validates preconditions
    double chi_m1 = kappa == 0 ? 1.0 : -1.0;
    auto center = [q, chi_m1](double t) {
        return t / kPi * std::log((double)q * t / (2.0 * kPi * M_E)) - chi_m1 / 4.0;
    };
    auto width = [q](double t) {
        double ell = std::log((double)q * (t + 2.0) / (2.0 * kPi));
        return 0.22737 * ell + 2.0 * std::log1p(ell) - 0.5;
    };
    // if the exact count at T is unknown, take the worst admissible value
    double n_for_lo = n_at_T >= 0 ? n_at_T : br.upper;
    double n_for_hi = n_at_T >= 0 ? n_at_T : br.lower;
    Bracket out;
    out.lo = tail_integral(w, T, [&](double t) { return std::max(0.0, center(t) - width(t)) - n_for_lo; });
    out.hi = tail_integral(w, T, [&](double t) { return center(t) + width(t) - n_for_hi; });
    return out;
}

Bracket tail_bracket_zeta(double T, TailWeight w, double n_at_T) {
    if (T < 20.0) throw PreconditionError("tail_bracket_zeta: T too small");
    // both-sign count model 2(theta(t)/pi + 1 +- 5)
    auto base = [](double t) { return 2.0 * (riemann_siegel_theta(t) / kPi + 1.0); };
    double n_for_lo = n_at_T >= 0 ? n_at_T : base(T) + 10.0;
    double n_for_hi = n_at_T >= 0 ? n_at_T : std::max(0.0, base(T) - 10.0);
    Bracket out;
    out.lo = tail_integral(w, T, [&](double t) { return std::max(0.0, base(t) - 10.0) - n_for_lo; });
    out.hi = tail_integral(w, T, [&](double t) { return base(t) + 10.0 - n_for_hi; });
    return out;
}

} // namespace mertens::zeros
