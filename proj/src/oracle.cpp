#include "embedkit/oracle.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace embedkit {

namespace {

using Key = std::pair<std::size_t, std::vector<std::uint64_t>>;

Key key_of(const Mat& m) { return {m.rows(), m.data()}; }

std::vector<std::uint64_t> decode_vector(std::uint64_t index, std::size_t rank, std::uint64_t q) {
    std::vector<std::uint64_t> v(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        v[i] = index % q;
        index /= q;
    }
    return v;
}

Mat cyclic_closure(const GModule& m, const std::vector<std::uint64_t>& v, std::uint64_t pa) {
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(static_cast<std::size_t>(pa));
    std::vector<std::uint64_t> cur = v;
    for (std::uint64_t k = 0; k < pa; ++k) {
        rows.push_back(cur);
        cur = apply_row(cur, m.sigma);
    }
    return howell_form(Mat::from_rows(m.mod, rows));
}

}  // namespace

SubmoduleInventory enumerate_g_submodules(const GModule& m, const CycloFactorization& cf,
                                          const OracleOptions& opt) {
    const std::size_t rank = m.rank();
    cpp_int size = boost::multiprecision::pow(cpp_int(m.mod.q), static_cast<unsigned>(rank));
    if (size > opt.size_bound)
        throw SizeBoundError("enumerate_g_submodules: |M| = " + size.str() +
                             " exceeds size bound " + std::to_string(opt.size_bound));
    const std::uint64_t total = static_cast<std::uint64_t>(size);
    std::uint64_t pa = 1;
    for (unsigned i = 0; i < m.a; ++i) pa *= m.p;

    // phase 1: cyclic sigma-stable closures of every vector
    std::map<Key, Mat> cyclic;
#pragma omp parallel if (opt.parallel)
    {
        std::map<Key, Mat> local;
#pragma omp for schedule(dynamic, 256) nowait
        for (std::int64_t idx = 1; idx < static_cast<std::int64_t>(total); ++idx) {
            Mat cl = cyclic_closure(m, decode_vector(static_cast<std::uint64_t>(idx), rank, m.mod.q), pa);
            local.emplace(key_of(cl), std::move(cl));
        }
#pragma omp critical
        for (auto& [k, v] : local) cyclic.emplace(k, std::move(v));
    }

    // phase 2: closure under span sums
    std::map<Key, Mat> all;
    Mat zero(m.mod, 0, rank);
    all.emplace(key_of(zero), zero);
    std::vector<Mat> queue{zero};
    std::vector<const Mat*> gens;
    gens.reserve(cyclic.size());
    for (auto& [k, v] : cyclic) gens.push_back(&v);
    while (!queue.empty()) {
        Mat cur = std::move(queue.back());
        queue.pop_back();
        std::vector<Mat> fresh;
#pragma omp parallel if (opt.parallel)
        {
            std::vector<Mat> local;
#pragma omp for schedule(dynamic, 16) nowait
            for (std::int64_t gi = 0; gi < static_cast<std::int64_t>(gens.size()); ++gi) {
                Mat s = span_sum(cur, *gens[static_cast<std::size_t>(gi)]);
                local.push_back(std::move(s));
            }
#pragma omp critical
            for (auto& s : local) fresh.push_back(std::move(s));
        }
        for (auto& s : fresh) {
            Key k = key_of(s);
            if (all.find(k) == all.end()) {
                all.emplace(k, s);
                queue.push_back(std::move(s));
            }
        }
    }

    SubmoduleInventory inv;
    inv.entries.reserve(all.size());
    for (auto& [k, basis] : all) {
        InventoryEntry e;
        e.signature = decompose_subgroup(m, cf, basis);
        e.basis = std::move(basis);
        inv.entries.push_back(std::move(e));
    }
    std::sort(inv.entries.begin(), inv.entries.end(),
              [](const InventoryEntry& x, const InventoryEntry& y) {
                  return key_of(x.basis) < key_of(y.basis);
              });
    return inv;
}

std::size_t count_isomorphic(const SubmoduleInventory& inv, const Decomposition& shape) {
    std::size_t n = 0;
    for (const auto& e : inv.entries)
        if (e.signature.same_signature(shape)) ++n;
    return n;
}

std::size_t count_with_witness_invariants(const SubmoduleInventory& inv,
                                          const std::vector<unsigned>& e_prime,
                                          const std::vector<std::vector<unsigned>>& e_double_prime) {
    std::size_t n = 0;
    for (const auto& e : inv.entries) {
        if (e.signature.trivial != e_prime) continue;
        bool ok = true;
        for (std::size_t i = 0; i < e_prime.size() && ok; ++i) {
            for (std::size_t b = 0; b < e.signature.components.size() && ok; ++b) {
                unsigned sum = 0;
                for (const auto& per_j : e.signature.components[b]) sum += per_j[i];
                if (b < e_double_prime[i].size() ? sum != e_double_prime[i][b] : sum != 0) ok = false;
            }
        }
        if (ok) ++n;
    }
    return n;
}

}  // namespace embedkit
