#include "embedkit/solvability.hpp"

#include <stdexcept>

namespace embedkit {

FieldInvariants invariants_of(const GModule& m, const CycloFactorization& cf) {
    if (m.mod.c != 1)
        throw std::invalid_argument("invariants_of: requires c = 1; use graded_dims for c > 1");
    if (cf.p != m.p || cf.a != m.a || cf.mod != m.mod)
        throw std::invalid_argument("invariants_of: factorization does not match module");
    FieldInvariants inv;
    inv.p = m.p;
    inv.a = m.a;
    inv.l = m.mod.l;
    inv.d = cf.d;
    inv.n0 = static_cast<unsigned>(fixed_submodule(m).basis.rows());
    for (unsigned b = 1; b <= m.a; ++b) {
        Poly phi = cyclotomic_poly(m.p, b, m.mod);
        unsigned nb = static_cast<unsigned>(kernel_of_poly(m, phi).basis.rows());
        inv.n_b.push_back(nb);
        std::vector<unsigned> g;
        unsigned check = 0;
        for (const auto& pbi : cf.factors_mod_l[b - 1]) {
            unsigned dim = static_cast<unsigned>(kernel_of_poly(m, pbi).basis.rows());
            if (dim % cf.d[b - 1] != 0)
                throw std::logic_error("invariants_of: kernel dimension not divisible by d_b");
            g.push_back(dim / static_cast<unsigned>(cf.d[b - 1]));
            check += dim;
        }
        if (check != nb)
            throw std::logic_error("invariants_of: sum of gamma_bi * d_b != n_b");
        inv.gamma.push_back(std::move(g));
    }
    return inv;
}

namespace {

// smallest (v_b...) completing `remaining` with v_b <= cap_b, d_b steps;
// lexicographic on (v_1, v_2, ...)
bool complete_witness(unsigned remaining, const std::vector<std::uint64_t>& d,
                      const std::vector<unsigned>& cap, std::size_t b,
                      std::vector<unsigned>& v) {
    if (b == d.size()) return remaining == 0;
    for (unsigned vb = 0; vb <= cap[b] && vb * d[b] <= remaining; ++vb) {
        v[b] = vb;
        if (complete_witness(remaining - static_cast<unsigned>(vb * d[b]), d, cap, b + 1, v))
            return true;
    }
    v[b] = 0;
    return false;
}

}  // namespace

SolvabilityReport solvable_field(unsigned n, const FieldInvariants& inv) {
    SolvabilityReport rep;
    std::vector<unsigned> cap(inv.d.size());
    for (std::size_t b = 0; b < inv.d.size(); ++b)
        cap[b] = inv.n_b[b] / static_cast<unsigned>(inv.d[b]);
    for (unsigned u = 0; u <= inv.n0 && u <= n; ++u) {
        std::vector<unsigned> v(inv.d.size(), 0);
        if (complete_witness(n - u, inv.d, cap, 0, v)) {
            rep.verdict = Verdict::Yes;
            rep.witness = FieldWitness{u, std::move(v)};
            return rep;
        }
    }
    rep.verdict = Verdict::No;
    return rep;
}

SolvabilityReport solvable_squarefree(unsigned n, const std::vector<FieldInvariants>& per_prime) {
    if (per_prime.empty()) throw std::invalid_argument("solvable_squarefree: no prime invariants");
    for (std::size_t i = 0; i < per_prime.size(); ++i)
        for (std::size_t j = i + 1; j < per_prime.size(); ++j)
            if (per_prime[i].l == per_prime[j].l)
                throw std::invalid_argument("solvable_squarefree: m is not square-free (repeated prime)");
    SolvabilityReport rep;
    rep.verdict = Verdict::Yes;
    for (const auto& inv : per_prime) {
        auto sub = solvable_field(n, inv);
        if (sub.verdict != Verdict::Yes) {
            rep.verdict = Verdict::No;
            rep.witnesses_per_prime.clear();
            return rep;
        }
        rep.witnesses_per_prime.push_back(*sub.witness);
    }
    return rep;
}

SolvabilityReport solvable_prime_power(const std::vector<unsigned>& e, const GradedDims& dims,
                                       const std::vector<std::uint64_t>& d) {
    const unsigned c = static_cast<unsigned>(e.size());
    if (dims.f_prime.size() != c + 1)
        throw std::invalid_argument("solvable_prime_power: f' table length disagrees with e");
    if (dims.f.size() != d.size())
        throw std::invalid_argument("solvable_prime_power: f table level count disagrees with d");
    SolvabilityReport rep;
    rep.e_prime.assign(c, 0);
    rep.e_double_prime.assign(c, std::vector<unsigned>(d.size(), 0));
    for (unsigned i = 1; i <= c; ++i) {
        unsigned cap0 = dims.f_prime[i - 1] - dims.f_prime[i];
        std::vector<unsigned> cap(d.size(), 0);
        for (std::size_t b = 0; b < d.size(); ++b)
            for (const auto& fj : dims.f[b]) cap[b] += fj[i - 1] - fj[i];
        bool found = false;
        for (unsigned ep = 0; ep <= cap0 && ep <= e[i - 1] && !found; ++ep) {
            std::vector<unsigned> epp(d.size(), 0);
            if (complete_witness(e[i - 1] - ep, d, cap, 0, epp)) {
                rep.e_prime[i - 1] = ep;
                rep.e_double_prime[i - 1] = std::move(epp);
                found = true;
            }
        }
        if (!found) {
            // the criterion is one-directional; failure certifies nothing
            rep.verdict = Verdict::SufficientOnlyUnknown;
            rep.e_prime.clear();
            rep.e_double_prime.clear();
            return rep;
        }
    }
    rep.verdict = Verdict::Yes;
    return rep;
}

cpp_int gaussian_binomial(unsigned gamma, unsigned gamma_prime, const cpp_int& q) {
    if (gamma_prime > gamma) return 0;
    cpp_int num = 1, den = 1;
    for (unsigned r = 0; r < gamma_prime; ++r) {
        num *= boost::multiprecision::pow(q, gamma - r) - 1;
        den *= boost::multiprecision::pow(q, r + 1) - 1;
    }
    cpp_int rem;
    cpp_int quo;
    boost::multiprecision::divide_qr(num, den, quo, rem);
    if (rem != 0) throw std::logic_error("gaussian_binomial: non-integral");
    return quo;
}

namespace {

// prod_{r=0}^{k-1} sum_{s=r}^{g-1} q^s, the literal product formula
cpp_int witness_product(unsigned g, unsigned k, const cpp_int& q) {
    cpp_int result = 1;
    for (unsigned r = 0; r < k; ++r) {
        cpp_int sum = 0;
        for (unsigned s = r; s < g; ++s) sum += boost::multiprecision::pow(q, s);
        result *= sum;
    }
    return result;
}

cpp_int checked_ratio(unsigned g, unsigned k, const cpp_int& q) {
    cpp_int num = witness_product(g, k, q);
    cpp_int den = witness_product(k, k, q);
    cpp_int quo, rem;
    boost::multiprecision::divide_qr(num, den, quo, rem);
    if (rem != 0) throw std::logic_error("count_nsext: non-integral ratio (internal inconsistency)");
    if (quo != gaussian_binomial(g, k, q))
        throw std::logic_error("count_nsext: ratio disagrees with Gaussian binomial");
    return quo;
}

}  // namespace

SubmoduleCount count_nsext(const std::vector<std::vector<unsigned>>& gamma,
                           const std::vector<std::vector<unsigned>>& gamma_prime,
                           unsigned n0, unsigned u, std::uint64_t l,
                           const std::vector<std::uint64_t>& d) {
    if (gamma.size() != gamma_prime.size() || gamma.size() != d.size())
        throw std::invalid_argument("count_nsext: table shapes disagree");
    if (u > n0) throw std::invalid_argument("count_nsext: u exceeds n0");
    SubmoduleCount out;
    out.value = 1;
    for (std::size_t b = 0; b < gamma.size(); ++b) {
        if (gamma[b].size() != gamma_prime[b].size())
            throw std::invalid_argument("count_nsext: table shapes disagree at level b");
        cpp_int q = boost::multiprecision::pow(cpp_int(l), static_cast<unsigned>(d[b]));
        for (std::size_t i = 0; i < gamma[b].size(); ++i) {
            if (gamma_prime[b][i] > gamma[b][i])
                throw std::invalid_argument("count_nsext: gamma'_bi exceeds gamma_bi");
            cpp_int f = checked_ratio(gamma[b][i], gamma_prime[b][i], q);
            out.component_factors.push_back(f);
            out.value *= f;
        }
    }
    out.fixed_factor = checked_ratio(n0, u, cpp_int(l));
    out.value *= out.fixed_factor;
    return out;
}

}  // namespace embedkit
