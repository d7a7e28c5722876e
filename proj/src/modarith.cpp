#include "embedkit/modarith.hpp"

#include <algorithm>
#include <sstream>

namespace embedkit {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Modulus::Modulus(std::uint64_t l_, unsigned c_) : l(l_), c(c_) {
    if (!is_prime(l)) throw std::invalid_argument("Modulus: l must be prime, got " + std::to_string(l));
    if (c == 0) throw std::invalid_argument("Modulus: c must be >= 1");
    q = 1;
    for (unsigned i = 0; i < c; ++i) {
        if (q > UINT64_MAX / l) throw std::overflow_error("Modulus: l^c exceeds 64 bits");
        q *= l;
    }
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, const Modulus& m) {
    return static_cast<std::uint64_t>(((__uint128_t)a + b) % m.q);
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, const Modulus& m) {
    return a >= b ? a - b : m.q - (b - a);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, const Modulus& m) {
    return static_cast<std::uint64_t>((__uint128_t)a * b % m.q);
}

std::uint64_t neg_mod(std::uint64_t a, const Modulus& m) { return a == 0 ? 0 : m.q - a; }

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, const Modulus& m) {
    std::uint64_t r = 1 % m.q;
    a %= m.q;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

unsigned valuation(std::uint64_t a, const Modulus& m) {
    if (a == 0) return m.c;
    unsigned v = 0;
    while (a % m.l == 0) {
        a /= m.l;
        ++v;
    }
    return v;
}

std::uint64_t inv_unit(std::uint64_t a, const Modulus& m) {
    if (a % m.l == 0) throw std::invalid_argument("inv_unit: not a unit mod l^c");
    // extended Euclid on integers
    __int128 r0 = static_cast<__int128>(m.q), r1 = static_cast<__int128>(a % m.q);
    __int128 s0 = 0, s1 = 1;
    while (r1 != 0) {
        __int128 k = r0 / r1;
        __int128 r2 = r0 - k * r1;
        __int128 s2 = s0 - k * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    __int128 s = s0 % static_cast<__int128>(m.q);
    if (s < 0) s += static_cast<__int128>(m.q);
    return static_cast<std::uint64_t>(s);
}

std::uint64_t multiplicative_order(std::uint64_t l, std::uint64_t p, unsigned b) {
    if (!is_prime(l)) throw std::invalid_argument("multiplicative_order: l must be prime");
    if (!is_prime(p)) throw std::invalid_argument("multiplicative_order: p must be prime");
    if (l == p) throw std::invalid_argument("multiplicative_order: l and p must be distinct");
    if (b == 0) throw std::invalid_argument("multiplicative_order: b must be >= 1");
    std::uint64_t pb = 1;
    for (unsigned i = 0; i < b; ++i) {
        if (pb > UINT64_MAX / p) throw std::overflow_error("multiplicative_order: p^b exceeds 64 bits");
        pb *= p;
    }
    Modulus m_raw;
    m_raw.l = p;  // only used for reduction; p^b need not be prime
    m_raw.c = b;
    m_raw.q = pb;
    std::uint64_t t = l % pb;
    std::uint64_t d = 1;
    std::uint64_t acc = t;
    while (acc != 1) {
        acc = mul_mod(acc, t, m_raw);
        ++d;
    }
    return d;
}

Poly::Poly(Modulus m, std::vector<std::uint64_t> coeffs) : mod_(m), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c %= mod_.q;
    normalize();
}

void Poly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void Poly::check_same_mod(const Poly& o) const {
    if (mod_ != o.mod_) throw std::invalid_argument("Poly: modulus mismatch");
}

std::uint64_t Poly::leading() const {
    if (is_zero()) throw std::logic_error("Poly::leading on zero polynomial");
    return coeffs_.back();
}

Poly Poly::operator+(const Poly& o) const {
    check_same_mod(o);
    std::vector<std::uint64_t> r(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = add_mod(coeff(i), o.coeff(i), mod_);
    return Poly(mod_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    check_same_mod(o);
    std::vector<std::uint64_t> r(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = sub_mod(coeff(i), o.coeff(i), mod_);
    return Poly(mod_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    check_same_mod(o);
    if (is_zero() || o.is_zero()) return zero(mod_);
    std::vector<std::uint64_t> r(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            r[i + j] = add_mod(r[i + j], mul_mod(coeffs_[i], o.coeffs_[j], mod_), mod_);
    return Poly(mod_, std::move(r));
}

Poly Poly::scaled(std::uint64_t s) const {
    std::vector<std::uint64_t> r(coeffs_);
    for (auto& c : r) c = mul_mod(c, s % mod_.q, mod_);
    return Poly(mod_, std::move(r));
}

bool Poly::lex_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs_.rbegin(), a.coeffs_.rend(),
                                        b.coeffs_.rbegin(), b.coeffs_.rend());
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        std::uint64_t c = coeff(static_cast<std::size_t>(i));
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c != 1) os << c;
        if (i > 0) {
            if (c != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
    if (f.mod() != g.mod()) throw std::invalid_argument("divmod: modulus mismatch");
    if (g.is_zero() || !g.is_monic()) throw std::invalid_argument("divmod: divisor must be monic");
    const Modulus& m = f.mod();
    std::vector<std::uint64_t> rem(f.coeffs());
    int dg = g.degree();
    if (f.degree() < dg) return {Poly::zero(m), f};
    std::vector<std::uint64_t> quo(static_cast<std::size_t>(f.degree() - dg) + 1, 0);
    for (int i = f.degree(); i >= dg; --i) {
        std::uint64_t lead = rem[static_cast<std::size_t>(i)];
        if (lead == 0) continue;
        quo[static_cast<std::size_t>(i - dg)] = lead;
        for (int j = 0; j <= dg; ++j) {
            auto idx = static_cast<std::size_t>(i - dg + j);
            rem[idx] = sub_mod(rem[idx], mul_mod(lead, g.coeff(static_cast<std::size_t>(j)), m), m);
        }
    }
    rem.resize(static_cast<std::size_t>(std::max(dg, 0)));
    return {Poly(m, std::move(quo)), Poly(m, std::move(rem))};
}

static Poly make_monic_field(const Poly& f) {
    if (f.is_zero()) return f;
    return f.scaled(inv_unit(f.leading(), f.mod()));
}

Poly poly_gcd(Poly f, Poly g) {
    if (f.mod() != g.mod()) throw std::invalid_argument("poly_gcd: modulus mismatch");
    if (!f.mod().is_field()) throw std::invalid_argument("poly_gcd: requires field modulus (c = 1)");
    while (!g.is_zero()) {
        Poly gm = make_monic_field(g);
        Poly r = divmod(f, gm).second;
        f = gm;
        g = r;
    }
    return make_monic_field(f);
}

std::tuple<Poly, Poly, Poly> poly_egcd(const Poly& f, const Poly& h) {
    if (f.mod() != h.mod()) throw std::invalid_argument("poly_egcd: modulus mismatch");
    if (!f.mod().is_field()) throw std::invalid_argument("poly_egcd: requires field modulus (c = 1)");
    const Modulus& m = f.mod();
    Poly r0 = f, r1 = h;
    Poly s0 = Poly::constant(m, 1), s1 = Poly::zero(m);
    Poly t0 = Poly::zero(m), t1 = Poly::constant(m, 1);
    while (!r1.is_zero()) {
        std::uint64_t li = inv_unit(r1.leading(), m);
        Poly r1m = r1.scaled(li);
        auto [q, r] = divmod(r0, r1m);
        q = q.scaled(li);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        r0 = r1; r1 = r;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (!r0.is_zero()) {
        std::uint64_t li = inv_unit(r0.leading(), m);
        r0 = r0.scaled(li);
        s0 = s0.scaled(li);
        t0 = t0.scaled(li);
    }
    return {r0, s0, t0};
}

Poly pow_mod_poly(const Poly& g, const cpp_int& e, const Poly& f) {
    if (!f.is_monic()) throw std::invalid_argument("pow_mod_poly: modulus polynomial must be monic");
    const Modulus& m = f.mod();
    Poly base = divmod(g, f).second;
    Poly result = Poly::constant(m, 1);
    if (e == 0) return result;
    // msb-to-lsb square-and-multiply
    std::size_t bits = boost::multiprecision::msb(e) + 1;
    for (std::size_t i = bits; i-- > 0;) {
        result = divmod(result * result, f).second;
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i)))
            result = divmod(result * base, f).second;
    }
    return result;
}

Poly with_modulus(const Poly& f, const Modulus& m) {
    return Poly(m, f.coeffs());
}

}  // namespace embedkit
