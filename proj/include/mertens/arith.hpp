// arith.hpp
//
// Integer and Dirichlet-character arithmetic: Kronecker symbols, fundamental
// discriminants, square-root counts C(q,a), primitive-character counts n(q),
// and the full character group mod q via the CRT decomposition of (Z/q)^x.
//
// All operations are pure and safe for concurrent use.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mertens/errors.hpp"

namespace mertens::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Kronecker symbol (d|n) for any integer d and n >= 0. Total function:
// fully multiplicative in n, agrees with the Legendre symbol for odd prime n.
int kronecker(i64 d, u64 n);

// Fundamental discriminant test. d = 1 is excluded as trivial.
bool is_fundamental(i64 d);

u64 gcd(u64 a, u64 b);
u64 phi(u64 q);

// Distinct prime factors of q (trial division against a shared prime table).
std::vector<std::pair<u64, int>> factorize(u64 q);
bool is_squarefree_abs(i64 d);

// Shared table of all primes below 10^6.
const std::vector<u64>& primes_to_million();

// C(q,a) = #{b : 1 <= b <= q-1, b^2 = a (mod q)}. Requires q > 1, gcd(a,q)=1.
u64 c_count(u64 q, u64 a);

// Case formula for C(q,1) in terms of omega(q) and nu_2(q).
u64 c_count_one_formula(u64 q);

// n(q): number of primitive characters mod q (product formula).
u64 primitive_count(u64 q);

// Character values are exact roots of unity exp(2*pi*i * num/den).
struct RootOfUnity {
    i64 num;  // reduced mod den, in [0, den)
    i64 den;  // positive
    bool is_one() const { return num == 0; }
    bool is_real() const { return num == 0 || 2 * num == den; }
    double real() const;
    double imag() const;
};

class CharacterGroup;

// One Dirichlet character mod q, represented by exponents on the CRT
// generators of (Z/q)^x. Evaluation is O(1) via precomputed discrete logs.
class DirichletCharacter {
public:
    u64 modulus() const { return q_; }
    u64 conductor() const { return conductor_; }
    int parity() const { return kappa_; }       // 0: chi(-1)=+1, 1: chi(-1)=-1
    bool is_real() const { return is_real_; }
    bool is_principal() const { return order_ == 1; }
    bool is_primitive() const { return conductor_ == q_; }
    u64 order() const { return order_; }
    u64 index() const { return index_; }        // position in characters(q)

    // Value at n: nullopt iff gcd(n, q) > 1.
    std::optional<RootOfUnity> value(u64 n) const;

    // +1/-1/0 for real characters.
    int real_value(u64 n) const;

    // The primitive character (mod conductor) inducing this one.
    DirichletCharacter primitive() const;

    // Exponent vector index of the conjugate character within the same group.
    u64 conjugate_index() const;

private:
    friend class CharacterGroup;
    std::shared_ptr<const CharacterGroup> group_;
    std::vector<u64> exponents_;   // one per cyclic factor
    u64 q_ = 1, conductor_ = 1, order_ = 1, index_ = 0;
    int kappa_ = 0;
    bool is_real_ = true;
};

// The complete character group mod q: exactly phi(q) characters.
class CharacterGroup : public std::enable_shared_from_this<CharacterGroup> {
public:
    static std::shared_ptr<const CharacterGroup> make(u64 q);

    u64 modulus() const { return q_; }
    u64 size() const { return phi_; }            // = phi(q)
    u64 exponent() const { return lambda_; }     // lcm of factor orders

    DirichletCharacter character(u64 index) const;
    std::vector<DirichletCharacter> all() const;

    // The real primitive character of conductor |d| attached to a
    // fundamental discriminant (built on the group mod |d|).
    static DirichletCharacter kronecker_character(i64 d);

private:
    struct CyclicFactor {
        u64 order;                    // order of this cyclic factor
        std::vector<i64> dlog;        // residue mod q -> exponent, -1 for non-units
        u64 prime;                    // underlying prime p
        int prime_exp;                // k with p^k | q (shared by the two 2-adic factors)
        bool is_sign_part;            // the <-1> factor of (Z/2^k)^x, k >= 3
    };

    u64 q_ = 1, phi_ = 1, lambda_ = 1;
    std::vector<CyclicFactor> factors_;

    void annotate(DirichletCharacter& chi) const;
    friend class DirichletCharacter;
};

} // namespace mertens::arith
