#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "embedkit/gmodule.hpp"

namespace embedkit {

/// Isotypic invariants of a module over F_l (c = 1): the fixed dimension,
/// the Phi_{p^b} kernel dimensions, and the per-factor multiplicities.
struct FieldInvariants {
    std::uint64_t p = 0;
    unsigned a = 0;
    std::uint64_t l = 0;
    unsigned n0 = 0;
    std::vector<unsigned> n_b;                  // [b-1] = dim ker Phi_{p^b}(sigma)
    std::vector<std::uint64_t> d;               // [b-1] = d_b
    std::vector<std::vector<unsigned>> gamma;   // [b-1][i] = multiplicity of F_l[x]/P_bi
};

FieldInvariants invariants_of(const GModule& m, const CycloFactorization& cf);

enum class Verdict { Yes, No, SufficientOnlyUnknown };

struct FieldWitness {
    unsigned u = 0;
    std::vector<unsigned> v;  // [b-1]
};

struct SolvabilityReport {
    Verdict verdict = Verdict::No;
    std::optional<FieldWitness> witness;                 // field / per-tau squarefree
    std::vector<FieldWitness> witnesses_per_prime;       // squarefree case
    // prime-power case: e_i = e'_i + sum_b d_b * e''_bi
    std::vector<unsigned> e_prime;                       // [i-1]
    std::vector<std::vector<unsigned>> e_double_prime;   // [i-1][b-1]
};

/// Exact criterion for H = (Z/l)^n: n = u + sum_b v_b d_b with u <= n0,
/// v_b <= n_b/d_b. Lexicographically smallest witness.
SolvabilityReport solvable_field(unsigned n, const FieldInvariants& inv);

/// H = (Z/m)^n for square-free m: the field criterion must hold for every
/// prime divisor.
SolvabilityReport solvable_squarefree(unsigned n, const std::vector<FieldInvariants>& per_prime);

/// One-directional criterion for H = direct sum of (Z/l^i)^{e_i}: a negative
/// outcome is SufficientOnlyUnknown, never No.
SolvabilityReport solvable_prime_power(const std::vector<unsigned>& e,
                                       const GradedDims& dims,
                                       const std::vector<std::uint64_t>& d);

/// Gaussian binomial [gamma choose gamma_prime]_q, exact.
cpp_int gaussian_binomial(unsigned gamma, unsigned gamma_prime, const cpp_int& q);

struct SubmoduleCount {
    cpp_int value;
    std::vector<cpp_int> component_factors;  // one per (b, i) with gamma'_{bi} > 0 ordering by (b, i)
    cpp_int fixed_factor;
};

/// The exact submodule count: prod_{b,i} (n_bi / n'_bi) * nbar / nbar'.
/// Every ratio is cross-checked against the Gaussian binomial.
SubmoduleCount count_nsext(const std::vector<std::vector<unsigned>>& gamma,
                           const std::vector<std::vector<unsigned>>& gamma_prime,
                           unsigned n0, unsigned u, std::uint64_t l,
                           const std::vector<std::uint64_t>& d);

}  // namespace embedkit
