#include "embedkit/cyclotomic.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace embedkit {

Poly cyclotomic_poly(std::uint64_t p, unsigned b, const Modulus& m) {
    if (!is_prime(p)) throw std::invalid_argument("cyclotomic_poly: p must be prime");
    if (b == 0) throw std::invalid_argument("cyclotomic_poly: b must be >= 1");
    std::uint64_t step = 1;
    for (unsigned i = 0; i + 1 < b; ++i) step *= p;
    std::vector<std::uint64_t> coeffs(step * (p - 1) + 1, 0);
    for (std::uint64_t j = 0; j < p; ++j) coeffs[j * step] = 1;
    return Poly(m, std::move(coeffs));
}

namespace {

Poly random_poly(const Modulus& m, int max_deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(0, m.q - 1);
    std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(max_deg) + 1);
    for (auto& c : coeffs) c = dist(rng);
    return Poly(m, std::move(coeffs));
}

// equal-degree splitting: every irreducible factor of f has degree d
void edf(const Poly& f, std::uint64_t d, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f);
        return;
    }
    const Modulus& m = f.mod();
    while (true) {
        Poly g = random_poly(m, f.degree() - 1, rng);
        if (g.degree() < 1) continue;
        Poly h;
        if (m.l == 2) {
            // trace map over F_{2^d}
            Poly t = divmod(g, f).second;
            Poly trace = t;
            for (std::uint64_t k = 1; k < d; ++k) {
                t = divmod(t * t, f).second;
                trace = trace + t;
            }
            h = trace;
        } else {
            cpp_int e = (boost::multiprecision::pow(cpp_int(m.l), static_cast<unsigned>(d)) - 1) / 2;
            h = pow_mod_poly(g, e, f) - Poly::constant(m, 1);
        }
        Poly s = poly_gcd(h, f);
        if (s.degree() > 0 && s.degree() < f.degree()) {
            auto [q, rem] = divmod(f, s);
            if (!rem.is_zero()) throw std::logic_error("edf: non-exact split");
            edf(s, d, rng, out);
            edf(q, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<Poly> factor_cyclotomic(std::uint64_t p, unsigned b, std::uint64_t l,
                                    std::uint64_t seed) {
    if (!is_prime(l)) throw std::invalid_argument("factor_cyclotomic: l must be prime");
    if (l == p) throw std::invalid_argument("factor_cyclotomic: l must differ from p");
    Modulus m(l, 1);
    Poly f = cyclotomic_poly(p, b, m);
    std::uint64_t d = multiplicative_order(l, p, b);
    std::mt19937_64 rng(seed);
    std::vector<Poly> out;
    edf(f, d, rng, out);
    std::sort(out.begin(), out.end(), Poly::lex_less);
    // shape law: p^{b-1}(p-1)/d_b factors of degree d_b reassembling f
    std::uint64_t euler = p - 1;
    for (unsigned i = 0; i + 1 < b; ++i) euler *= p;
    if (out.size() != euler / d) throw std::logic_error("factor_cyclotomic: factor count violates shape law");
    Poly prod = Poly::constant(m, 1);
    for (const auto& g : out) {
        if (g.degree() != static_cast<int>(d)) throw std::logic_error("factor_cyclotomic: factor degree violates shape law");
        prod = prod * g;
    }
    if (prod != f) throw std::logic_error("factor_cyclotomic: product does not reconstruct input");
    return out;
}

namespace {

// One quadratic Hensel step: given f = g*h and s*g + t*h = 1 mod l^k,
// produce the same data mod l^k2 (k < k2 <= 2k). All polys enter reduced
// mod l^k and leave reduced mod l^k2.
void hensel_step(const Poly& f, Poly& g, Poly& h, Poly& s, Poly& t, const Modulus& m2) {
    Poly f2 = with_modulus(f, m2);
    Poly g2 = with_modulus(g, m2);
    Poly h2 = with_modulus(h, m2);
    Poly s2 = with_modulus(s, m2);
    Poly t2 = with_modulus(t, m2);
    Poly e = f2 - g2 * h2;
    auto [q, r] = divmod(t2 * e, g2);
    Poly gn = g2 + r;
    Poly hn = h2 + s2 * e + q * h2;
    Poly b = s2 * gn + t2 * hn - Poly::constant(m2, 1);
    auto [q2, r2] = divmod(s2 * b, hn);
    Poly sn = s2 - r2;
    Poly tn = t2 - (t2 * b + q2 * gn);
    g = gn; h = hn; s = sn; t = tn;
}

// Lift the pair (g, h) with g*h = f mod l to g*h = f mod l^c.
std::pair<Poly, Poly> lift_pair(const Poly& f, const Poly& g1, const Poly& h1, unsigned c) {
    std::uint64_t l = f.mod().l;
    auto [gcd, s, t] = poly_egcd(g1, h1);
    if (gcd.degree() != 0)
        throw std::invalid_argument("hensel_lift: factors not coprime mod l (no Bezout certificate)");
    Poly g = g1, h = h1;
    unsigned k = 1;
    while (k < c) {
        unsigned k2 = std::min(2 * k, c);
        Modulus m2(l, k2);
        hensel_step(f, g, h, s, t, m2);
        k = k2;
    }
    return {g, h};
}

void lift_tree(const Poly& f, const std::vector<Poly>& factors, std::size_t lo, std::size_t hi,
               unsigned c, std::vector<Poly>& out) {
    if (hi - lo == 1) {
        out.push_back(f);
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    Modulus ml(f.mod().l, 1);
    Poly g1 = Poly::constant(ml, 1), h1 = Poly::constant(ml, 1);
    for (std::size_t i = lo; i < mid; ++i) g1 = g1 * factors[i];
    for (std::size_t i = mid; i < hi; ++i) h1 = h1 * factors[i];
    auto [g, h] = lift_pair(f, g1, h1, c);
    lift_tree(g, factors, lo, mid, c, out);
    lift_tree(h, factors, mid, hi, c, out);
}

}  // namespace

std::vector<Poly> hensel_lift(const Poly& f_mod_lc, const std::vector<Poly>& factors_mod_l,
                              unsigned c) {
    if (factors_mod_l.empty()) throw std::invalid_argument("hensel_lift: empty factor list");
    const Modulus& m = f_mod_lc.mod();
    if (m.c != c) throw std::invalid_argument("hensel_lift: target modulus disagrees with c");
    for (const auto& g : factors_mod_l) {
        if (g.mod().l != m.l || g.mod().c != 1)
            throw std::invalid_argument("hensel_lift: factors must live mod l");
        if (!g.is_monic()) throw std::invalid_argument("hensel_lift: factors must be monic");
    }
    std::vector<Poly> out;
    lift_tree(f_mod_lc, factors_mod_l, 0, factors_mod_l.size(), c, out);
    // verify: product identity mod l^c and reductions mod l
    Modulus ml(m.l, 1);
    Poly prod = Poly::constant(m, 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        prod = prod * out[i];
        if (with_modulus(out[i], ml) != factors_mod_l[i])
            throw std::logic_error("hensel_lift: lifted factor does not reduce to source");
    }
    if (prod != f_mod_lc) throw std::logic_error("hensel_lift: lifted product mismatch");
    return out;
}

std::vector<Poly> crt_idempotents(const Poly& f, const std::vector<Poly>& factors) {
    const Modulus& m = f.mod();
    std::vector<Poly> out;
    out.reserve(factors.size());
    Modulus ml(m.l, 1);
    for (const auto& g : factors) {
        auto [cof, rem] = divmod(f, g);
        if (!rem.is_zero()) throw std::invalid_argument("crt_idempotents: factor does not divide f");
        if (g == f) {
            out.push_back(Poly::constant(m, 1));
            continue;
        }
        // invert the cofactor mod (g, l), then Newton-lift the inverse mod l^c
        auto [gcd, s, t] = poly_egcd(with_modulus(cof, ml), with_modulus(g, ml));
        if (gcd.degree() != 0)
            throw std::invalid_argument("crt_idempotents: factors not coprime (no Bezout certificate)");
        Poly u = with_modulus(s, m);
        Poly cof_red = divmod(cof, g).second;
        unsigned k = 1;
        while (k < m.c) {
            Poly cu = divmod(cof_red * u, g).second;
            u = divmod(u * (Poly::constant(m, 2) - cu), g).second;
            k *= 2;
        }
        Poly e = divmod(u * cof, f).second;
        out.push_back(e);
    }
    // idempotent laws in (Z/l^c)[x]/(f)
    Poly sum = Poly::zero(m);
    for (std::size_t i = 0; i < out.size(); ++i) {
        sum = sum + out[i];
        if (divmod(out[i] * out[i], f).second != out[i])
            throw std::logic_error("crt_idempotents: e_i^2 != e_i");
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (!divmod(out[i] * out[j], f).second.is_zero())
                throw std::logic_error("crt_idempotents: e_i * e_j != 0");
    }
    if (divmod(sum, f).second != Poly::constant(m, 1))
        throw std::logic_error("crt_idempotents: idempotents do not sum to 1");
    return out;
}

CycloFactorization CycloFactorization::build(std::uint64_t p, unsigned a, std::uint64_t l,
                                             unsigned c, std::uint64_t seed) {
    if (!is_prime(p) || !is_prime(l)) throw std::invalid_argument("CycloFactorization: p and l must be prime");
    if (l == p) throw std::invalid_argument("CycloFactorization: l must differ from p");
    if (a == 0 || c == 0) throw std::invalid_argument("CycloFactorization: a and c must be >= 1");
    CycloFactorization cf;
    cf.p = p;
    cf.a = a;
    cf.l = l;
    cf.c = c;
    cf.mod = Modulus(l, c);
    Modulus ml(l, 1);

    std::vector<Poly> flat_mod_l;
    flat_mod_l.push_back(Poly(ml, {ml.q - 1, 1}));  // x - 1
    for (unsigned b = 1; b <= a; ++b) {
        std::uint64_t db = multiplicative_order(l, p, b);
        cf.d.push_back(db);
        std::uint64_t euler = p - 1;
        for (unsigned i = 0; i + 1 < b; ++i) euler *= p;
        cf.r.push_back(static_cast<std::size_t>(euler / db));
        auto fs = factor_cyclotomic(p, b, l, seed);
        for (const auto& g : fs) flat_mod_l.push_back(g);
        cf.factors_mod_l.push_back(std::move(fs));
    }

    // x^{p^a} - 1 mod l^c
    std::uint64_t pa = 1;
    for (unsigned i = 0; i < a; ++i) pa *= p;
    std::vector<std::uint64_t> fc(static_cast<std::size_t>(pa) + 1, 0);
    fc[0] = cf.mod.q - 1;
    fc[static_cast<std::size_t>(pa)] = 1;
    cf.modulus_poly = Poly(cf.mod, std::move(fc));

    auto lifted = hensel_lift(cf.modulus_poly, flat_mod_l, c);
    cf.linear_factor = lifted[0];
    // canonical j-order is lexicographic on the *lifted* factors, which may
    // differ from the mod-l order; permute each level (and the mod-l list,
    // kept aligned) accordingly
    std::size_t idx = 1;
    for (unsigned b = 1; b <= a; ++b) {
        std::size_t base = idx;
        std::vector<std::size_t> order(cf.r[b - 1]);
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return Poly::lex_less(lifted[base + x], lifted[base + y]);
        });
        std::vector<Poly> level, level_mod_l;
        for (std::size_t i : order) {
            level.push_back(lifted[base + i]);
            level_mod_l.push_back(cf.factors_mod_l[b - 1][i]);
        }
        for (std::size_t i = 0; i < order.size(); ++i) {
            lifted[base + i] = level[i];
            flat_mod_l[base + i] = level_mod_l[i];
        }
        cf.factors_mod_l[b - 1] = std::move(level_mod_l);
        cf.factors_lifted.push_back(std::move(level));
        idx += cf.r[b - 1];
    }

    auto idem = crt_idempotents(cf.modulus_poly, lifted);
    cf.idempotent_linear = idem[0];
    idx = 1;
    for (unsigned b = 1; b <= a; ++b) {
        std::vector<Poly> level;
        for (std::size_t i = 0; i < cf.r[b - 1]; ++i) level.push_back(idem[idx++]);
        cf.idempotents.push_back(std::move(level));
    }
    return cf;
}

}  // namespace embedkit
