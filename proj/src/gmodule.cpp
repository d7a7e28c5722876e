#include "embedkit/gmodule.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace embedkit {

GModule::GModule(std::uint64_t p_, unsigned a_, Modulus mod_, Mat sigma_)
    : p(p_), a(a_), mod(mod_), sigma(std::move(sigma_)) {
    if (!is_prime(p)) throw std::invalid_argument("GModule: p must be prime");
    if (a == 0) throw std::invalid_argument("GModule: a must be >= 1");
    if (p % mod.l == 0) throw std::invalid_argument("GModule: l must differ from p");
    if (sigma.rows() != sigma.cols()) throw std::invalid_argument("GModule: sigma must be square");
    if (sigma.mod() != mod) throw std::invalid_argument("GModule: sigma modulus mismatch");
    if (rank_mod_l(sigma) != sigma.rows())
        throw std::invalid_argument("GModule: sigma must be invertible mod l");
    std::uint64_t pa = 1;
    for (unsigned i = 0; i < a; ++i) pa *= p;
    if (mat_pow(sigma, pa) != Mat::identity(mod, sigma.rows()))
        throw std::invalid_argument("GModule: sigma^(p^a) != identity");
}

Submodule kernel_of_poly(const GModule& m, const Poly& f) {
    if (f.mod() != m.mod) throw std::invalid_argument("kernel_of_poly: modulus mismatch");
    Mat k = kernel(eval_poly_at(f, m.sigma));
    return Submodule{std::move(k)};
}

Submodule fixed_submodule(const GModule& m) {
    return kernel_of_poly(m, Poly(m.mod, {m.mod.q - 1, 1}));
}

bool is_sigma_stable(const GModule& m, const Mat& basis) {
    for (std::size_t i = 0; i < basis.rows(); ++i)
        if (!span_contains(basis, apply_row(basis.row(i), m.sigma))) return false;
    return true;
}

namespace {

void check_cf(const GModule& m, const CycloFactorization& cf) {
    if (cf.p != m.p || cf.a != m.a || cf.mod != m.mod)
        throw std::invalid_argument("CycloFactorization does not match the module's (p, a, l, c)");
}

// image of the idempotent e restricted to the subgroup spanned by `rows`
Mat idempotent_image(const GModule& m, const Poly& e, const Mat& rows) {
    Mat em = eval_poly_at(e, m.sigma);
    return howell_form(multiply(rows, em));
}

std::uint64_t l_pow(const Modulus& m, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= m.l;
    return r;
}

// graded F_l-dimensions of l^i S / l^{i+1} S for i = 0..c
std::vector<unsigned> l_adic_grading(const Modulus& mod, const Mat& basis) {
    std::vector<unsigned> logs(mod.c + 1, 0);
    for (unsigned i = 0; i <= mod.c; ++i) {
        if (i == 0) {
            logs[i] = span_log_size(basis);
        } else if (i == mod.c) {
            logs[i] = 0;
        } else {
            logs[i] = span_log_size(howell_form(basis.scaled(l_pow(mod, i))));
        }
    }
    std::vector<unsigned> g(mod.c + 1, 0);
    for (unsigned i = 0; i < mod.c; ++i) g[i] = logs[i] - logs[i + 1];
    return g;
}

GradedDims graded_dims_impl(const GModule& m, const CycloFactorization& cf, const Mat& rows) {
    GradedDims gd;
    Mat fixed = idempotent_image(m, cf.idempotent_linear, rows);
    gd.f_prime = l_adic_grading(m.mod, fixed);
    gd.f.resize(cf.a);
    for (unsigned b = 1; b <= cf.a; ++b) {
        gd.f[b - 1].resize(cf.r[b - 1]);
        for (std::size_t j = 0; j < cf.r[b - 1]; ++j) {
            Mat comp = idempotent_image(m, cf.idempotents[b - 1][j], rows);
            auto raw = l_adic_grading(m.mod, comp);
            std::vector<unsigned> scaled(raw.size());
            for (std::size_t i = 0; i < raw.size(); ++i) {
                if (raw[i] % cf.d[b - 1] != 0)
                    throw std::logic_error("graded_dims: raw dimension not divisible by d_b");
                scaled[i] = raw[i] / static_cast<unsigned>(cf.d[b - 1]);
            }
            gd.f[b - 1][j] = std::move(scaled);
        }
    }
    return gd;
}

Decomposition decompose_impl(const GModule& m, const CycloFactorization& cf, const Mat& rows) {
    Decomposition dec;
    dec.c = m.mod.c;
    dec.dims = graded_dims_impl(m, cf, rows);
    dec.log_size = span_log_size(rows);
    dec.trivial.resize(dec.c, 0);
    unsigned acc = 0;
    for (unsigned i = 1; i <= dec.c; ++i) {
        if (dec.dims.f_prime[i] > dec.dims.f_prime[i - 1])
            throw std::logic_error("decompose: f' sequence not non-increasing");
        dec.trivial[i - 1] = dec.dims.f_prime[i - 1] - dec.dims.f_prime[i];
        acc += i * dec.trivial[i - 1];
    }
    dec.components.resize(cf.a);
    for (unsigned b = 1; b <= cf.a; ++b) {
        dec.components[b - 1].resize(cf.r[b - 1]);
        for (std::size_t j = 0; j < cf.r[b - 1]; ++j) {
            const auto& f = dec.dims.f[b - 1][j];
            std::vector<unsigned> mult(dec.c, 0);
            for (unsigned i = 1; i <= dec.c; ++i) {
                if (f[i] > f[i - 1]) throw std::logic_error("decompose: f sequence not non-increasing");
                mult[i - 1] = f[i - 1] - f[i];
                acc += i * static_cast<unsigned>(cf.d[b - 1]) * mult[i - 1];
            }
            dec.components[b - 1][j] = std::move(mult);
        }
    }
    if (acc != dec.log_size) throw std::logic_error("decompose: size conservation violated");
    return dec;
}

}  // namespace

ComponentModule component(const GModule& m, const CycloFactorization& cf, unsigned b,
                          std::size_t j) {
    check_cf(m, cf);
    if (b < 1 || b > cf.a || j >= cf.r[b - 1])
        throw std::out_of_range("component: (b, j) index out of range");
    Mat basis = idempotent_image(m, cf.idempotents[b - 1][j], Mat::identity(m.mod, m.rank()));
    // a direct summand of a free module is free; its Howell pivots are units
    auto prof = howell_profile(basis);
    for (unsigned v : prof.pivot_vals)
        if (v != 0) throw std::logic_error("component: idempotent image is not a direct summand");
    Mat sig(m.mod, basis.rows(), basis.rows());
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        auto coords = span_coordinates(basis, apply_row(basis.row(i), m.sigma));
        if (!coords) throw std::logic_error("component: image not sigma-stable");
        for (std::size_t k = 0; k < basis.rows(); ++k) sig.at(i, k) = (*coords)[k];
    }
    return ComponentModule{GModule(m.p, m.a, m.mod, std::move(sig)), std::move(basis)};
}

GradedDims graded_dims(const GModule& m, const CycloFactorization& cf) {
    check_cf(m, cf);
    return graded_dims_impl(m, cf, Mat::identity(m.mod, m.rank()));
}

Decomposition decompose(const GModule& m, const CycloFactorization& cf) {
    check_cf(m, cf);
    return decompose_impl(m, cf, Mat::identity(m.mod, m.rank()));
}

GradedDims graded_dims_subgroup(const GModule& m, const CycloFactorization& cf, const Mat& basis) {
    check_cf(m, cf);
    return graded_dims_impl(m, cf, basis);
}

Decomposition decompose_subgroup(const GModule& m, const CycloFactorization& cf, const Mat& basis) {
    check_cf(m, cf);
    return decompose_impl(m, cf, basis);
}

namespace {

using Elem = std::vector<std::uint64_t>;

Elem add_elems(const Elem& x, const Elem& y, const std::vector<std::uint64_t>& ms) {
    Elem r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = (x[i] + y[i]) % ms[i];
    return r;
}

std::set<Elem> generated_subgroup(const std::vector<Elem>& gens,
                                  const std::vector<std::uint64_t>& ms) {
    std::set<Elem> s;
    s.insert(Elem(ms.size(), 0));
    std::vector<Elem> frontier(s.begin(), s.end());
    while (!frontier.empty()) {
        std::vector<Elem> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                Elem y = add_elems(x, g, ms);
                if (s.insert(y).second) next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    return s;
}

}  // namespace

bool is_type_t1(const std::vector<std::uint64_t>& invariant_factors,
                const std::vector<std::vector<std::uint64_t>>& elements,
                std::uint64_t size_bound) {
    std::uint64_t order = 1;
    for (auto m : invariant_factors) {
        if (m == 0) throw std::invalid_argument("is_type_t1: invariant factors must be positive");
        if (order > size_bound / m) throw SizeBoundError("is_type_t1: ambient group exceeds size bound");
        order *= m;
    }
    const std::size_t n = elements.size();
    for (const auto& e : elements)
        if (e.size() != invariant_factors.size())
            throw std::invalid_argument("is_type_t1: element dimension mismatch");
    std::map<std::uint64_t, std::set<Elem>> cache;
    auto subgroup = [&](std::uint64_t mask) -> const std::set<Elem>& {
        auto it = cache.find(mask);
        if (it != cache.end()) return it->second;
        std::vector<Elem> gens;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ULL << i)) {
                Elem e(elements[i]);
                for (std::size_t k = 0; k < e.size(); ++k) e[k] %= invariant_factors[k];
                gens.push_back(std::move(e));
            }
        return cache.emplace(mask, generated_subgroup(gens, invariant_factors)).first->second;
    };
    // every 3-coloring of the elements into (A, B, neither), A and B nonempty
    std::vector<unsigned> color(n, 0);
    Elem zero(invariant_factors.size(), 0);
    while (true) {
        std::uint64_t ma = 0, mb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (color[i] == 1) ma |= 1ULL << i;
            if (color[i] == 2) mb |= 1ULL << i;
        }
        if (ma && mb && (ma & -ma) < (mb & -mb)) {  // skip the symmetric twin
            const auto& sa = subgroup(ma);
            const auto& sb = subgroup(mb);
            for (const auto& x : sa)
                if (x != zero && sb.count(x)) return false;
        }
        std::size_t i = 0;
        while (i < n && color[i] == 2) color[i++] = 0;
        if (i == n) break;
        ++color[i];
    }
    return true;
}

}  // namespace embedkit
