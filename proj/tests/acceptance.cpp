// Acceptance suite: one pass/fail line per criterion, exit nonzero if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "embedkit/cyclotomic.hpp"
#include "embedkit/gmodule.hpp"
#include "embedkit/matrix.hpp"
#include "embedkit/oracle.hpp"
#include "embedkit/pm_builder.hpp"
#include "embedkit/solvability.hpp"

using namespace embedkit;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::vector<std::string> notes;

void report(int idx, const std::string& name, bool ok) {
    std::cout << "criterion " << idx << " [" << name << "]: " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) ++failures;
    for (const auto& n : notes) std::cout << "    " << n << "\n";
    notes.clear();
}

void note(const std::string& s) { notes.push_back(s); }

const std::vector<std::pair<std::uint64_t, std::uint64_t>> kPLGrid = {
    {3, 2}, {3, 7}, {5, 2}, {5, 3}, {7, 2}, {2, 3}, {2, 5}};

// the fixed module grid shared by criteria 3, 4, 6, 7
struct GridModule {
    GModule module;
    std::string name;
};

std::vector<GridModule> grid_modules(unsigned c, std::uint64_t max_size) {
    std::vector<GridModule> out;
    for (std::uint64_t p : {2, 3, 5, 7}) {
        for (std::uint64_t l : {2, 3, 5}) {
            if (l == p) continue;
            std::uint64_t m = 1;
            for (unsigned i = 0; i < c; ++i) m *= l;
            for (unsigned a : {1u, 2u}) {
                std::vector<std::vector<std::uint64_t>> configs = {{p}, {p, 1}, {p, p}};
                if (a == 2) {
                    configs.push_back({p * p});
                    configs.push_back({p * p, 1});
                }
                for (const auto& orbits : configs) {
                    PmModule pm = synthetic_module(p, a, orbits, m);
                    double bits = static_cast<double>(pm.module.log_size()) *
                                  std::log2(static_cast<double>(l));
                    if (bits > std::log2(static_cast<double>(max_size))) continue;
                    std::string name = "p=" + std::to_string(p) + ",a=" + std::to_string(a) +
                                       ",l=" + std::to_string(l) + ",c=" + std::to_string(c) +
                                       ",orbits=";
                    for (auto s : orbits) name += std::to_string(s) + ".";
                    out.push_back({pm.module, name});
                }
                if (a == 1) {
                    PmModule pm = artin_schreier_example(p, m);
                    double bits = static_cast<double>(pm.module.log_size()) *
                                  std::log2(static_cast<double>(l));
                    if (bits <= std::log2(static_cast<double>(max_size)))
                        out.push_back({pm.module, "artin-schreier p=" + std::to_string(p) +
                                                      ",m=" + std::to_string(m)});
                }
            }
        }
    }
    return out;
}

Mat random_invertible(const Modulus& m, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        Mat u(m, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) u.at(i, j) = rng() % m.q;
        if (rank_mod_l(u) == n) return u;
    }
}

bool matrix_inverse(const Mat& u, Mat& out) {
    const Modulus& m = u.mod();
    std::size_t n = u.rows();
    Mat aug(m, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = u.at(i, j);
        aug.at(i, n + i) = 1;
    }
    Mat h = howell_form(aug);
    if (h.rows() != n) return false;
    out = Mat(m, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (h.at(i, j) != (i == j ? 1u : 0u)) return false;
            out.at(i, j) = h.at(i, n + j);
        }
    return true;
}

// ---- criterion 1: factor shape law over the (p, l) grid, timed ----
bool criterion1() {
    auto t0 = Clock::now();
    for (auto [p, l] : kPLGrid) {
        for (unsigned b = 1; b <= 2; ++b) {
            auto fs = factor_cyclotomic(p, b, l);
            std::uint64_t d = multiplicative_order(l, p, b);
            std::uint64_t euler = (p - 1);
            for (unsigned i = 0; i + 1 < b; ++i) euler *= p;
            if (fs.size() != euler / d) return false;
            Modulus m(l, 1);
            Poly prod = Poly::constant(m, 1);
            for (const auto& f : fs) {
                if (f.degree() != static_cast<int>(d)) return false;
                prod = prod * f;
            }
            if (prod != cyclotomic_poly(p, b, m)) return false;
        }
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    note("runtime " + std::to_string(secs) + " s (budget 1 s)");
    return secs < 1.0;
}

// ---- criterion 2: Hensel consistency over the grid, c in {2, 3} ----
bool criterion2() {
    for (auto [p, l] : kPLGrid) {
        for (unsigned c : {2u, 3u}) {
            auto cf = CycloFactorization::build(p, 2, l, c);
            Modulus ml(l, 1);
            Poly prod = cf.linear_factor;
            for (unsigned b = 1; b <= 2; ++b) {
                for (std::size_t j = 0; j < cf.r[b - 1]; ++j) {
                    const Poly& lift = cf.factors_lifted[b - 1][j];
                    if (with_modulus(lift, ml) != cf.factors_mod_l[b - 1][j]) return false;
                    prod = prod * lift;
                }
            }
            if (prod != cf.modulus_poly) return false;
        }
    }
    return true;
}

// ---- criterion 3: field criterion vs oracle over the grid, timed ----
bool criterion3() {
    auto t0 = Clock::now();
    for (const auto& gm : grid_modules(1, 1ULL << 16)) {
        auto cf = CycloFactorization::build(gm.module.p, gm.module.a, gm.module.mod.l, 1);
        auto oracle = enumerate_g_submodules(gm.module, cf);
        auto inv = invariants_of(gm.module, cf);
        std::set<unsigned> found_dims;
        for (const auto& e : oracle.entries) found_dims.insert(span_log_size(e.basis));
        for (unsigned n = 0; n <= gm.module.rank(); ++n) {
            bool criterion = solvable_field(n, inv).verdict == Verdict::Yes;
            bool oracle_yes = found_dims.count(n) > 0;
            if (criterion != oracle_yes) {
                note("disagreement at n=" + std::to_string(n) + " on " + gm.name);
                return false;
            }
        }
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    note("runtime " + std::to_string(secs) + " s (budget 300 s)");
    return secs < 300.0;
}

// ---- criterion 4: exact count vs oracle for every admissible (u, gamma') ----
bool criterion4() {
    bool saw_five = false, saw_whole = false;
    for (const auto& gm : grid_modules(1, 1ULL << 16)) {
        auto cf = CycloFactorization::build(gm.module.p, gm.module.a, gm.module.mod.l, 1);
        auto oracle = enumerate_g_submodules(gm.module, cf);
        auto inv = invariants_of(gm.module, cf);
        // iterate all (u, gamma'_bj) tuples by mixed-radix counting
        std::vector<unsigned> caps;
        caps.push_back(inv.n0);
        for (const auto& level : inv.gamma)
            for (unsigned g : level) caps.push_back(g);
        std::vector<unsigned> cur(caps.size(), 0);
        while (true) {
            unsigned u = cur[0];
            std::vector<std::vector<unsigned>> gp(inv.gamma.size());
            std::size_t k = 1;
            for (std::size_t b = 0; b < inv.gamma.size(); ++b)
                for (std::size_t j = 0; j < inv.gamma[b].size(); ++j) gp[b].push_back(cur[k++]);
            cpp_int predicted = count_nsext(inv.gamma, gp, inv.n0, u, inv.l, inv.d).value;
            Decomposition shape;
            shape.c = 1;
            shape.trivial = {u};
            shape.components.resize(inv.gamma.size());
            for (std::size_t b = 0; b < gp.size(); ++b)
                for (unsigned g : gp[b]) shape.components[b].push_back({g});
            cpp_int actual = count_isomorphic(oracle, shape);
            if (predicted != actual) {
                note("count mismatch on " + gm.name);
                return false;
            }
            if (predicted == 5 && inv.l == 2 && !gp.empty()) saw_five = true;
            bool whole = (u == inv.n0);
            for (std::size_t b = 0; b < gp.size() && whole; ++b) whole = (gp[b] == inv.gamma[b]);
            if (whole) {
                if (predicted != 1) return false;
                saw_whole = true;
            }
            std::size_t i = 0;
            while (i < cur.size() && cur[i] == caps[i]) cur[i++] = 0;
            if (i == cur.size()) break;
            ++cur[i];
        }
    }
    // the documented gamma = 2, gamma' = 1, q = 4 instance
    if (count_nsext({{2}}, {{1}}, 0, 0, 2, {2}).value != 5) return false;
    note(std::string("hit q=4 five-count case in grid: ") + (saw_five ? "yes" : "no"));
    return saw_whole;
}

// ---- criterion 5: product formula vs Gaussian binomial, 1000 random tuples ----
bool criterion5() {
    std::mt19937_64 rng(2024);
    const std::uint64_t primes[] = {2, 3, 5, 7, 11};
    for (int trial = 0; trial < 1000; ++trial) {
        unsigned gamma = static_cast<unsigned>(rng() % 7);           // <= 6
        unsigned gp = gamma ? static_cast<unsigned>(rng() % (gamma + 1)) : 0;
        std::uint64_t l = primes[rng() % 5];
        std::uint64_t d = 1 + rng() % 3;
        // count_nsext evaluates the literal product-ratio formula
        cpp_int via_product = count_nsext({{gamma}}, {{gp}}, 0, 0, l, {d}).value;
        cpp_int q = boost::multiprecision::pow(cpp_int(l), static_cast<unsigned>(d));
        if (via_product != gaussian_binomial(gamma, gp, q)) return false;
    }
    return true;
}

// ---- criterion 6: conservation and basis invariance for c in {2, 3} ----
bool criterion6() {
    std::mt19937_64 rng(77);
    for (unsigned c : {2u, 3u}) {
        for (const auto& gm : grid_modules(c, 1ULL << 16)) {
            auto cf = CycloFactorization::build(gm.module.p, gm.module.a, gm.module.mod.l, c);
            auto dec = decompose(gm.module, cf);
            // size conservation, recomputed here
            unsigned acc = 0;
            for (unsigned i = 1; i <= c; ++i) acc += i * dec.trivial[i - 1];
            for (std::size_t b = 0; b < dec.components.size(); ++b)
                for (const auto& per_j : dec.components[b])
                    for (unsigned i = 1; i <= c; ++i)
                        acc += i * static_cast<unsigned>(cf.d[b]) * per_j[i - 1];
            if (acc != gm.module.log_size()) {
                note("size conservation failed on " + gm.name);
                return false;
            }
            std::size_t n = gm.module.rank();
            if (n == 0) continue;
            for (int trial = 0; trial < 100; ++trial) {
                Mat u = random_invertible(gm.module.mod, n, rng);
                Mat uinv;
                if (!matrix_inverse(u, uinv)) return false;
                GModule conj(gm.module.p, gm.module.a, gm.module.mod,
                             multiply(multiply(u, gm.module.sigma), uinv));
                if (!decompose(conj, cf).same_signature(dec)) {
                    note("basis-change variance on " + gm.name);
                    return false;
                }
            }
        }
    }
    return true;
}

// ---- criterion 7: prime-power criterion soundness vs oracle ----
bool criterion7() {
    for (unsigned c : {2u, 3u}) {
        for (const auto& gm : grid_modules(c, 1ULL << 16)) {
            auto cf = CycloFactorization::build(gm.module.p, gm.module.a, gm.module.mod.l, c);
            auto dims = graded_dims(gm.module, cf);
            auto oracle = enumerate_g_submodules(gm.module, cf);
            // all exponent vectors e with sum_i i*e_i <= log|M| and entries <= 3
            std::vector<unsigned> e(c, 0);
            while (true) {
                unsigned weight = 0;
                for (unsigned i = 1; i <= c; ++i) weight += i * e[i - 1];
                if (weight <= gm.module.log_size()) {
                    auto rep = solvable_prime_power(e, dims, cf.d);
                    if (rep.verdict == Verdict::Yes) {
                        // oracle must confirm a submodule with the witness invariants
                        std::vector<std::vector<unsigned>> epp(c);
                        for (unsigned i = 0; i < c; ++i) epp[i] = rep.e_double_prime[i];
                        if (count_with_witness_invariants(oracle, rep.e_prime, epp) == 0) {
                            note("yes-verdict unconfirmed on " + gm.name);
                            return false;
                        }
                    } else if (rep.verdict == Verdict::No) {
                        note("one-directionality violated: verdict 'no' emitted");
                        return false;
                    }
                }
                std::size_t i = 0;
                while (i < c && e[i] == 3) e[i++] = 0;
                if (i == c) break;
                ++e[i];
            }
        }
    }
    // the documented one-directionality witness: Z/2 inside (Z/4)^3 cyclic shift
    Modulus z4(2, 2);
    Mat s = Mat::from_rows(z4, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    GModule m(3, 1, z4, std::move(s));
    auto cf = CycloFactorization::build(3, 1, 2, 2);
    auto rep = solvable_prime_power({1, 0}, graded_dims(m, cf), cf.d);
    if (rep.verdict != Verdict::SufficientOnlyUnknown) return false;
    auto oracle = enumerate_g_submodules(m, cf);
    std::size_t z2_count = count_with_witness_invariants(oracle, {1, 0}, {{0}, {0}});
    note("Z/2 in (Z/4)^3: criterion unknown, oracle finds " + std::to_string(z2_count));
    return z2_count >= 1;
}

// ---- criterion 8: genus-0 rank law over 50 random puncture specs ----
bool criterion8() {
    std::mt19937_64 rng(4242);
    const std::uint64_t ps[] = {2, 3, 5, 7};
    const std::uint64_t ls[] = {2, 3, 5, 7, 11};
    for (int trial = 0; trial < 50; ++trial) {
        std::uint64_t p = ps[rng() % 4];
        unsigned a = 1 + static_cast<unsigned>(rng() % 2);
        std::uint64_t pa = 1;
        for (unsigned i = 0; i < a; ++i) pa *= p;
        std::uint64_t l = ls[rng() % 5];
        while (l == p) l = ls[rng() % 5];
        unsigned c = 1 + static_cast<unsigned>(rng() % 2);
        std::uint64_t m = 1;
        for (unsigned i = 0; i < c; ++i) m *= l;
        // random orbit structure: cycle lengths are divisors of p^a
        std::vector<std::uint64_t> divisors;
        for (std::uint64_t t = 1; t <= pa; t *= p) divisors.push_back(t);
        std::vector<std::string> punctures;
        std::vector<std::size_t> perm;
        std::vector<std::vector<std::size_t>> orbits;
        std::size_t n_orbits = 1 + rng() % 4;
        for (std::size_t k = 0; k < n_orbits; ++k) {
            std::uint64_t len = divisors[rng() % divisors.size()];
            std::size_t base = punctures.size();
            std::vector<std::size_t> orbit;
            for (std::uint64_t i = 0; i < len; ++i) {
                punctures.push_back("x" + std::to_string(base + i));
                perm.push_back(base + static_cast<std::size_t>((i + 1) % len));
                orbit.push_back(base + static_cast<std::size_t>(i));
            }
            orbits.push_back(std::move(orbit));
        }
        auto spec = PuncturedCoverSpec::make(p, a, punctures, perm, m);
        PmModule pm = build_pm_genus0(spec);
        if (pm.module.rank() != punctures.size() - 1) return false;
        if (mat_pow(pm.module.sigma, pa) != Mat::identity(pm.module.mod, pm.module.rank()))
            return false;
        // degree invariance: each sigma row, embedded in the ambient divisor
        // space, matches the permutation image of its basis vector
        const Modulus& mod = pm.module.mod;
        std::size_t n = pm.punctures.size();
        // names were constructed in sorted order ("x0" < "x1" < ... fails at
        // width changes, so recover the output-order permutation directly)
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<std::uint64_t> want(n, 0);
            want[pm.sigma_perm[i]] = add_mod(want[pm.sigma_perm[i]], 1, mod);
            want[pm.sigma_perm[0]] = sub_mod(want[pm.sigma_perm[0]], 1, mod);
            std::vector<std::uint64_t> got(n, 0);
            auto row = pm.module.sigma.row(i - 1);
            for (std::size_t j = 1; j < n; ++j) {
                got[j] = add_mod(got[j], row[j - 1], mod);
                got[0] = sub_mod(got[0], row[j - 1], mod);
            }
            if (got != want) return false;
            std::uint64_t deg = 0;
            for (auto x : got) deg = add_mod(deg, x, mod);
            if (deg != 0) return false;
        }
        // random G-stable subsets: unions of orbits, mapped to output indices
        std::vector<std::size_t> to_output(n);
        {
            // reconstruct the input->output index map by name
            for (std::size_t i = 0; i < n; ++i) {
                auto it = std::find(pm.punctures.begin(), pm.punctures.end(),
                                    punctures[i]);
                to_output[i] = static_cast<std::size_t>(it - pm.punctures.begin());
            }
        }
        std::vector<std::size_t> subset;
        for (const auto& orbit : orbits)
            if (rng() % 2)
                for (std::size_t i : orbit) subset.push_back(to_output[i]);
        Submodule sub = pm_inclusion(pm, subset);
        if (!is_sigma_stable(pm.module, sub.basis)) return false;
        std::size_t expected = subset.size() <= 1 ? 0 : subset.size() - 1;
        if (sub.basis.rows() != expected) return false;
    }
    return true;
}

// ---- criterion 9: T1 checker vs independent brute force ----
namespace t1 {

using Elem = std::vector<std::uint64_t>;

std::set<Elem> subgroup_of(const std::vector<Elem>& gens, const std::vector<std::uint64_t>& ms) {
    std::set<Elem> s{Elem(ms.size(), 0)};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Elem> cur(s.begin(), s.end());
        for (const auto& x : cur)
            for (const auto& g : gens) {
                Elem y(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) y[i] = (x[i] + g[i]) % ms[i];
                if (s.insert(y).second) grew = true;
            }
    }
    return s;
}

bool brute_force_t1(const std::vector<std::uint64_t>& ms, const std::vector<Elem>& elems) {
    std::size_t n = elems.size();
    Elem zero(ms.size(), 0);
    for (std::uint64_t a = 1; a < (1ULL << n); ++a)
        for (std::uint64_t b = 1; b < (1ULL << n); ++b) {
            if (a & b) continue;
            std::vector<Elem> ga, gb;
            for (std::size_t i = 0; i < n; ++i) {
                if (a & (1ULL << i)) ga.push_back(elems[i]);
                if (b & (1ULL << i)) gb.push_back(elems[i]);
            }
            auto sa = subgroup_of(ga, ms), sb = subgroup_of(gb, ms);
            for (const auto& x : sa)
                if (x != zero && sb.count(x)) return false;
        }
    return true;
}

}  // namespace t1

bool criterion9() {
    const std::vector<std::vector<std::uint64_t>> groups = {
        {2, 2, 2}, {4, 2}, {8}, {3, 3}, {9}, {4, 4}, {16}, {5, 5}, {2, 4, 8},
        {12}, {6, 6}, {256}, {2, 2, 2, 2, 2}, {27, 3}, {25, 5}};
    std::mt19937_64 rng(99);
    for (const auto& ms : groups) {
        std::uint64_t order = 1;
        for (auto m : ms) order *= m;
        if (order > 256) return false;  // list must respect the stated bound
        for (int trial = 0; trial < 8; ++trial) {
            std::size_t n_elems = 1 + rng() % 4;
            std::vector<std::vector<std::uint64_t>> elems(n_elems);
            for (auto& e : elems) {
                e.resize(ms.size());
                for (std::size_t i = 0; i < ms.size(); ++i) e[i] = rng() % ms[i];
            }
            if (is_type_t1(ms, elems) != t1::brute_force_t1(ms, elems)) {
                note("T1 disagreement on a random instance");
                return false;
            }
        }
    }
    // the crafted examples
    if (!is_type_t1({2, 2}, {{1, 0}, {0, 1}})) return false;
    if (is_type_t1({4}, {{1}, {3}})) return false;
    if (is_type_t1({2, 2}, {{1, 0}, {1, 1}, {0, 1}})) return false;
    return true;
}

}  // namespace

int main() {
    struct Entry {
        int idx;
        const char* name;
        std::function<bool()> fn;
    };
    const std::vector<Entry> entries = {
        {1, "factor shape law", criterion1},
        {2, "lift consistency", criterion2},
        {3, "field criterion vs oracle", criterion3},
        {4, "exact count vs oracle", criterion4},
        {5, "gaussian-binomial identity", criterion5},
        {6, "conservation and basis invariance", criterion6},
        {7, "prime-power criterion soundness", criterion7},
        {8, "genus-0 rank law", criterion8},
        {9, "T1 checker vs brute force", criterion9},
    };
    for (const auto& e : entries) {
        bool ok = false;
        try {
            ok = e.fn();
        } catch (const std::exception& ex) {
            note(std::string("exception: ") + ex.what());
        }
        report(e.idx, e.name, ok);
    }
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 9 criteria passed\n";
    return 0;
}
