#pragma once

#include <cstdint>
#include <vector>

#include "embedkit/cyclotomic.hpp"
#include "embedkit/matrix.hpp"
#include "embedkit/modarith.hpp"

namespace embedkit {

/// Refusal to enumerate past the configured size bound.
struct SizeBoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A finite module (Z/l^c)^rank with an action of G = Z/p^a given by one
/// invertible matrix sigma (right action, v -> v * sigma).
struct GModule {
    std::uint64_t p = 0;
    unsigned a = 0;
    Modulus mod;
    Mat sigma;

    GModule() = default;
    GModule(std::uint64_t p, unsigned a, Modulus mod, Mat sigma);

    std::size_t rank() const { return sigma.rows(); }
    unsigned log_size() const { return mod.c * static_cast<unsigned>(rank()); }
};

/// A sigma-stable subgroup, held as its canonical Howell basis.
struct Submodule {
    Mat basis;  // Howell form

    std::size_t num_generators() const { return basis.rows(); }
    unsigned log_size() const { return span_log_size(basis); }
};

/// {v : v * f(sigma) = 0}, canonical basis. Sigma-stable by construction.
Submodule kernel_of_poly(const GModule& m, const Poly& f);

/// kernel_of_poly with f = x - 1.
Submodule fixed_submodule(const GModule& m);

/// Whether every row image under sigma stays in the span (the equivariance
/// certificate used by pm_inclusion and the submodule invariants).
bool is_sigma_stable(const GModule& m, const Mat& basis);

/// The idempotent component N_bj realized inside m, with its embedding.
/// b is 1-based, j is 0-based into the lexicographic factor order.
struct ComponentModule {
    GModule module;  // the component in its own coordinates
    Mat basis;       // rows: basis of the component inside the parent
};
ComponentModule component(const GModule& m, const CycloFactorization& cf, unsigned b,
                          std::size_t j);

/// Graded dimensions of the l-adic filtration: f_prime[i] for the fixed
/// part, f[b-1][j][i] for the component N_bj (already divided by d_b).
/// Index i runs 0..c with the value at c always 0.
struct GradedDims {
    std::vector<unsigned> f_prime;
    std::vector<std::vector<std::vector<unsigned>>> f;
};

/// Multiplicities of the indecomposable summands.
struct Decomposition {
    unsigned c = 0;
    GradedDims dims;
    std::vector<unsigned> trivial;  // [i-1] = multiplicity of Z/l^i, i = 1..c
    // [b-1][j][i-1] = multiplicity of Z[zeta_{p^b}]/Q_bj^i
    std::vector<std::vector<std::vector<unsigned>>> components;
    unsigned log_size = 0;  // log_l |module|

    bool same_signature(const Decomposition& o) const {
        return trivial == o.trivial && components == o.components;
    }
};

GradedDims graded_dims(const GModule& m, const CycloFactorization& cf);
Decomposition decompose(const GModule& m, const CycloFactorization& cf);

/// Same invariants for a sigma-stable subgroup of m given by its basis.
GradedDims graded_dims_subgroup(const GModule& m, const CycloFactorization& cf, const Mat& basis);
Decomposition decompose_subgroup(const GModule& m, const CycloFactorization& cf, const Mat& basis);

/// Type T1 check: for every pair of disjoint subsets A, B of the given
/// elements, <A> and <B> intersect trivially. The ambient group is
/// prod Z/invariant_factors[k]; enumeration refuses past size_bound.
bool is_type_t1(const std::vector<std::uint64_t>& invariant_factors,
                const std::vector<std::vector<std::uint64_t>>& elements,
                std::uint64_t size_bound = 1ULL << 20);

}  // namespace embedkit
