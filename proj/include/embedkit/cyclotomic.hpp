#pragma once

#include <cstdint>
#include <vector>

#include "embedkit/modarith.hpp"

namespace embedkit {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'c0de'1234'5678ULL;

/// Phi_{p^b} as a polynomial over the given modulus:
/// sum_{j=0}^{p-1} x^{j * p^(b-1)}.
Poly cyclotomic_poly(std::uint64_t p, unsigned b, const Modulus& m);

/// Monic irreducible factors of Phi_{p^b} over F_l, each of degree
/// d_b = ord(l mod p^b), in lexicographic order on coefficient sequences.
/// The random splitting is driven by the seed; the output is canonical and
/// seed-independent.
std::vector<Poly> factor_cyclotomic(std::uint64_t p, unsigned b, std::uint64_t l,
                                    std::uint64_t seed = kDefaultSeed);

/// Lift a pairwise-coprime monic factorization of a monic f over F_l to
/// Z/l^c, quadratic Hensel steps. The product of the lifts equals f mod l^c
/// and each lift reduces to its source mod l.
std::vector<Poly> hensel_lift(const Poly& f_mod_lc, const std::vector<Poly>& factors_mod_l,
                              unsigned c);

/// Orthogonal idempotents of (Z/l^c)[x]/(f) for a pairwise-coprime monic
/// factorization f = prod factors, one idempotent per factor.
std::vector<Poly> crt_idempotents(const Poly& f, const std::vector<Poly>& factors);

/// Everything the decomposition machinery needs for G = Z/p^a and
/// coefficients Z/l^c: per-level factors of Phi_{p^b} mod l, their lifts,
/// the linear factor x-1, and the CRT idempotents of (Z/l^c)[x]/(x^{p^a}-1).
/// Idempotent order: [linear, b=1 factors, b=2 factors, ...], each level
/// lexicographic.
struct CycloFactorization {
    std::uint64_t p = 0;
    unsigned a = 0;
    std::uint64_t l = 0;
    unsigned c = 0;
    Modulus mod;                                 // l^c
    std::vector<std::uint64_t> d;                // d[b-1] = ord(l mod p^b)
    std::vector<std::size_t> r;                  // r[b-1] = p^{b-1}(p-1)/d_b
    std::vector<std::vector<Poly>> factors_mod_l;    // [b-1][i], mod l
    std::vector<std::vector<Poly>> factors_lifted;   // [b-1][i], mod l^c
    Poly linear_factor;                          // lift of x-1 (equals x-1)
    Poly modulus_poly;                           // x^{p^a}-1 mod l^c
    Poly idempotent_linear;
    std::vector<std::vector<Poly>> idempotents;  // [b-1][i]

    static CycloFactorization build(std::uint64_t p, unsigned a, std::uint64_t l, unsigned c,
                                    std::uint64_t seed = kDefaultSeed);
};

}  // namespace embedkit
