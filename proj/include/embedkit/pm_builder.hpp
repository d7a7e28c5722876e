#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "embedkit/gmodule.hpp"

namespace embedkit {

/// A genus-0 punctured cover: a finite puncture set with a permutation
/// action of the generator of G = Z/p^a, and a prime-power torsion level m.
struct PuncturedCoverSpec {
    std::uint64_t p = 0;
    unsigned a = 0;
    std::vector<std::string> punctures;   // sorted ascending on construction
    std::vector<std::size_t> sigma_perm;  // index -> image index
    std::uint64_t l = 0;
    unsigned c = 0;

    /// m = l^c must be a prime power coprime to p; the permutation order
    /// must divide p^a.
    static PuncturedCoverSpec make(std::uint64_t p, unsigned a,
                                   std::vector<std::string> punctures,
                                   std::vector<std::size_t> sigma_perm, std::uint64_t m);
};

/// The degree-zero divisor module on the punctures, in the basis
/// {s_i - s_0} with s_0 the lexicographically least puncture.
struct PmModule {
    GModule module;
    std::vector<std::string> labels;  // labels[i] names basis vector s_{i+1} - s_0
    std::vector<std::string> punctures;
    std::vector<std::size_t> sigma_perm;
};

PmModule build_pm_genus0(const PuncturedCoverSpec& spec);

/// The cover t -> t^p - t: punctures F_p and infinity, sigma shifts t -> t+1.
PmModule artin_schreier_example(std::uint64_t p, std::uint64_t m);

/// Degree-zero permutation module on a formal G-set made of cyclic orbits.
PmModule synthetic_module(std::uint64_t p, unsigned a,
                          const std::vector<std::uint64_t>& orbit_sizes, std::uint64_t m);

/// The inclusion P_m(V \ S) in P_m(V \ S_V) for a sigma-stable puncture
/// subset S (given by indices into spec order). Throws naming a violating
/// point if S is not stable. The returned basis passes the sigma-stability
/// certificate (asserted).
Submodule pm_inclusion(const PmModule& pm, const std::vector<std::size_t>& subset);

/// Split m into a prime power (l, c); throws if m is not a prime power.
std::pair<std::uint64_t, unsigned> prime_power_split(std::uint64_t m);

}  // namespace embedkit
