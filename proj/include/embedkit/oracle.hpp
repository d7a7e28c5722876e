#pragma once

#include <cstdint>
#include <vector>

#include "embedkit/gmodule.hpp"

namespace embedkit {

/// One enumerated sigma-stable submodule with its decomposition signature.
struct InventoryEntry {
    Mat basis;  // Howell form
    Decomposition signature;
};

/// Exhaustive, canonically ordered inventory of the sigma-stable submodules
/// of a small module. Ground truth for the criteria and counts.
struct SubmoduleInventory {
    std::vector<InventoryEntry> entries;  // sorted by (rows, data)
};

struct OracleOptions {
    std::uint64_t size_bound = 1ULL << 20;  // refuse when |M| exceeds this
    bool parallel = true;                   // serial path kept as reference
};

/// Closure enumeration: cyclic sigma-stable closures of every vector, then
/// closure under span sums, deduplicated via Howell form. Refuses with
/// SizeBoundError when |M| > size_bound.
SubmoduleInventory enumerate_g_submodules(const GModule& m, const CycloFactorization& cf,
                                          const OracleOptions& opt = {});

/// Number of inventory entries whose decomposition signature matches.
std::size_t count_isomorphic(const SubmoduleInventory& inv, const Decomposition& shape);

/// Number of entries whose trivial multiplicities are e' and whose per-level
/// component multiplicities sum (over j) to e'' — the shape of a
/// prime-power witness.
std::size_t count_with_witness_invariants(const SubmoduleInventory& inv,
                                          const std::vector<unsigned>& e_prime,
                                          const std::vector<std::vector<unsigned>>& e_double_prime);

}  // namespace embedkit
