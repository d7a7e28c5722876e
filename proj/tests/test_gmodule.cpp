#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "embedkit/gmodule.hpp"

using namespace embedkit;

namespace {

GModule cyclic_shift(std::uint64_t p, unsigned a, const Modulus& m, std::size_t n) {
    Mat s(m, n, n);
    for (std::size_t i = 0; i < n; ++i) s.at(i, (i + 1) % n) = 1;
    return GModule(p, a, m, std::move(s));
}

Mat random_invertible(const Modulus& m, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        Mat u(m, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) u.at(i, j) = rng() % m.q;
        if (rank_mod_l(u) == n) return u;
    }
}

// inverse of an invertible matrix: Howell form of [U | I] is [I | U^{-1}]
Mat inverse(const Mat& u) {
    const Modulus& m = u.mod();
    std::size_t n = u.rows();
    Mat aug(m, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = u.at(i, j);
        aug.at(i, n + i) = 1;
    }
    Mat h = howell_form(aug);
    REQUIRE(h.rows() == n);
    Mat inv(m, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            REQUIRE(h.at(i, j) == (i == j ? 1 : 0));
            inv.at(i, j) = h.at(i, n + j);
        }
    return inv;
}

}  // namespace

TEST_CASE("module construction guards") {
    Modulus m(2, 1);
    CHECK_THROWS(GModule(4, 1, m, Mat::identity(m, 2)));          // p not prime
    CHECK_THROWS(GModule(2, 1, m, Mat::identity(m, 2)));          // l == p
    CHECK_THROWS(GModule(3, 1, m, Mat::from_rows(m, {{0, 0}, {0, 1}})));  // singular
    Modulus f5(5, 1);
    Mat bad = Mat::from_rows(f5, {{2}});  // 2 has order 4 mod 5, not a power of 3
    CHECK_THROWS(GModule(3, 1, f5, std::move(bad)));
}

TEST_CASE("kernel_of_poly examples") {
    Modulus f2(2, 1);
    GModule m = cyclic_shift(3, 1, f2, 3);
    Submodule fix = kernel_of_poly(m, Poly(f2, {1, 1}));  // x - 1 = x + 1
    CHECK(fix.basis.rows() == 1);
    CHECK(fix.basis.row(0) == std::vector<std::uint64_t>{1, 1, 1});
    CHECK(kernel_of_poly(m, Poly::constant(f2, 1)).basis.rows() == 0);
    Submodule k = kernel_of_poly(m, Poly(f2, {1, 1, 1}));
    CHECK(k.basis.rows() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        auto r = k.basis.row(i);
        CHECK((r[0] ^ r[1] ^ r[2]) == 0);  // sum of coordinates vanishes
    }
    CHECK(fixed_submodule(m).basis == fix.basis);
}

TEST_CASE("fixed submodule of identity action is everything") {
    Modulus m(5, 2);
    GModule g(3, 1, m, Mat::identity(m, 3));
    CHECK(fixed_submodule(g).basis == Mat::identity(m, 3));
}

TEST_CASE("(Z/4)^3 cyclic shift worked example") {
    Modulus z4(2, 2);
    GModule m = cyclic_shift(3, 1, z4, 3);
    auto cf = CycloFactorization::build(3, 1, 2, 2);

    Submodule fix = fixed_submodule(m);
    CHECK(fix.log_size() == 2);  // fixed part is Z/4 (the constants)

    auto gd = graded_dims(m, cf);
    CHECK(gd.f_prime == std::vector<unsigned>{1, 1, 0});
    REQUIRE(gd.f.size() == 1);
    REQUIRE(gd.f[0].size() == 1);
    CHECK(gd.f[0][0] == std::vector<unsigned>{1, 1, 0});

    auto dec = decompose(m, cf);
    CHECK(dec.trivial == std::vector<unsigned>{0, 1});            // one Z/4
    CHECK(dec.components[0][0] == std::vector<unsigned>{0, 1});   // one Z[zeta_3]/Q^2
    CHECK(dec.log_size == 6);                                     // 4 * 16 = 2^6

    auto comp = component(m, cf, 1, 0);
    CHECK(span_log_size(comp.basis) == 4);  // |N_11| = 16
    CHECK(comp.module.rank() == 2);
}

TEST_CASE("trivial action has zero nontrivial components") {
    Modulus m(2, 2);
    GModule g(3, 1, m, Mat::identity(m, 2));
    auto cf = CycloFactorization::build(3, 1, 2, 2);
    auto dec = decompose(g, cf);
    CHECK(dec.trivial == std::vector<unsigned>{0, 2});
    CHECK(dec.components[0][0] == std::vector<unsigned>{0, 0});
    CHECK(component(g, cf, 1, 0).basis.rows() == 0);
}

TEST_CASE("decompose is invariant under conjugation") {
    std::mt19937_64 rng(23);
    Modulus z9(3, 2);
    GModule m = cyclic_shift(2, 2, z9, 4);
    auto cf = CycloFactorization::build(2, 2, 3, 2);
    auto dec = decompose(m, cf);
    for (int trial = 0; trial < 20; ++trial) {
        Mat u = random_invertible(z9, 4, rng);
        Mat s2 = multiply(multiply(u, m.sigma), inverse(u));
        GModule m2(2, 2, z9, std::move(s2));
        CHECK(decompose(m2, cf).same_signature(dec));
    }
}

TEST_CASE("subgroup decomposition on the whole module matches") {
    Modulus z4(2, 2);
    GModule m = cyclic_shift(3, 1, z4, 3);
    auto cf = CycloFactorization::build(3, 1, 2, 2);
    auto a = decompose(m, cf);
    auto b = decompose_subgroup(m, cf, howell_form(Mat::identity(z4, 3)));
    CHECK(a.same_signature(b));
    // and the zero subgroup is all-zero
    auto z = decompose_subgroup(m, cf, Mat(z4, 0, 3));
    CHECK(z.log_size == 0);
    CHECK(z.trivial == std::vector<unsigned>{0, 0});
}

TEST_CASE("type T1 examples") {
    CHECK(is_type_t1({2, 2}, {{1, 0}, {0, 1}}));
    CHECK_FALSE(is_type_t1({4}, {{1}, {3}}));
    CHECK_FALSE(is_type_t1({2, 2}, {{1, 0}, {1, 1}, {0, 1}}));
    CHECK(is_type_t1({8}, {}));                      // no pair of nonempty disjoint subsets
    CHECK(is_type_t1({3, 3}, {{1, 0}, {0, 2}}));
    CHECK_THROWS_AS(is_type_t1({1024, 1024, 1024}, {{1, 0, 0}}), SizeBoundError);
}
