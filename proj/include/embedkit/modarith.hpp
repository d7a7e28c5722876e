#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace embedkit {

using boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t n);

/// Prime-power modulus l^c. All ring elements are plain uint64_t values in
/// [0, q); the modulus travels alongside them.
struct Modulus {
    std::uint64_t l = 0;
    unsigned c = 0;
    std::uint64_t q = 0;  // l^c

    Modulus() = default;
    Modulus(std::uint64_t l_, unsigned c_);

    bool operator==(const Modulus&) const = default;

    bool is_field() const { return c == 1; }
};

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, const Modulus& m);
std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, const Modulus& m);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, const Modulus& m);
std::uint64_t neg_mod(std::uint64_t a, const Modulus& m);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, const Modulus& m);

/// l-adic valuation of a in [0, q); returns c for a == 0.
unsigned valuation(std::uint64_t a, const Modulus& m);

/// Inverse of a unit (val = 0). Throws if a is divisible by l.
std::uint64_t inv_unit(std::uint64_t a, const Modulus& m);

/// Smallest d >= 1 with l^d == 1 (mod p^b). Rejects l == p and composites.
std::uint64_t multiplicative_order(std::uint64_t l, std::uint64_t p, unsigned b);

/// Dense univariate polynomial over Z/l^c, coefficients low degree first.
/// Normalized: no trailing zero coefficients (zero poly has empty coeffs).
class Poly {
public:
    Poly() = default;
    Poly(Modulus m, std::vector<std::uint64_t> coeffs);

    static Poly zero(const Modulus& m) { return Poly(m, {}); }
    static Poly constant(const Modulus& m, std::uint64_t v) { return Poly(m, {v}); }
    static Poly x(const Modulus& m) { return Poly(m, {0, 1}); }

    const Modulus& mod() const { return mod_; }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::uint64_t coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
    std::uint64_t leading() const;
    bool is_monic() const { return !is_zero() && leading() == 1; }

    bool operator==(const Poly&) const = default;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(std::uint64_t s) const;

    /// Lexicographic order on (degree, coefficient sequence high to low);
    /// the canonical factor order used throughout.
    static bool lex_less(const Poly& a, const Poly& b);

    std::string to_string() const;

private:
    void normalize();
    void check_same_mod(const Poly& o) const;

    Modulus mod_;
    std::vector<std::uint64_t> coeffs_;
};

/// f = q*g + r with deg r < deg g; g must be monic.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);

/// Monic gcd over F_l; requires c == 1.
Poly poly_gcd(Poly f, Poly g);

/// Extended gcd over F_l: returns (g, s, t) with s*f + t*h = g, g monic.
std::tuple<Poly, Poly, Poly> poly_egcd(const Poly& f, const Poly& h);

/// g^e mod f, exponent arbitrary precision; f monic.
Poly pow_mod_poly(const Poly& g, const cpp_int& e, const Poly& f);

/// Change of modulus: reduce (c' <= c) or reinterpret coefficients
/// (values must fit, used for lifting setups).
Poly with_modulus(const Poly& f, const Modulus& m);

}  // namespace embedkit
