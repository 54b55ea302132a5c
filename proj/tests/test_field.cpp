#include "presdist/field.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace presdist;

namespace {

FieldMatrix mk(const std::vector<std::vector<std::uint32_t>>& rows, std::uint32_t q) {
    return FieldMatrix::from_rows(rows, q);
}

}  // namespace

TEST_CASE("identity multiplication fixes any matrix") {
    std::mt19937 rng(7);
    FieldMatrix x(3, 3, 2);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) x.set(i, j, rng() % 2);
    }
    CHECK(mat_mul(FieldMatrix::identity(3, 2), x) == x);
    CHECK(mat_mul(x, FieldMatrix::identity(3, 2)) == x);
}

TEST_CASE("mod-2 product of the unipotent matrix with itself") {
    const FieldMatrix m = mk({{1, 1}, {0, 1}}, 2);
    CHECK(mat_mul(m, m) == FieldMatrix::identity(2, 2));
}

TEST_CASE("the worked signed pair multiplies to the identity over GF(3)") {
    // -1 maps to 2 mod 3
    const FieldMatrix a = mk({{1, 1, 1}, {1, 0, 1}, {1, 1, 0}}, 3);
    const FieldMatrix b = mk({{2, 1, 1}, {1, 2, 0}, {1, 0, 2}}, 3);
    CHECK(mat_mul(a, b) == FieldMatrix::identity(3, 3));
}

TEST_CASE("mat_mul rejects mismatched shapes and moduli") {
    CHECK_THROWS_AS(mat_mul(FieldMatrix(2, 3, 2), FieldMatrix(2, 2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(mat_mul(FieldMatrix(2, 2, 2), FieldMatrix(2, 2, 3)), std::invalid_argument);
}

TEST_CASE("rank basics") {
    CHECK(rank(FieldMatrix(2, 2, 2)) == 0);
    CHECK(rank(FieldMatrix::identity(4, 5)) == 4);
    CHECK(rank(mk({{1, 1, 1}, {1, 0, 1}, {1, 1, 0}}, 2)) == 3);
}

TEST_CASE("rank equals rank of the transpose on random small matrices") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t q = (trial % 2 == 0) ? 2 : 5;
        const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        FieldMatrix m(r, c, q);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() % q);
        }
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("invert basics") {
    CHECK(*invert(FieldMatrix::identity(3, 7)) == FieldMatrix::identity(3, 7));

    const FieldMatrix m = mk({{1, 1, 1}, {1, 0, 1}, {1, 1, 0}}, 2);
    const FieldMatrix expected = mk({{1, 1, 1}, {1, 1, 0}, {1, 0, 1}}, 2);
    REQUIRE(invert(m).has_value());
    CHECK(*invert(m) == expected);
    CHECK(mat_mul(m, *invert(m)) == FieldMatrix::identity(3, 2));

    CHECK_FALSE(invert(mk({{1, 1}, {1, 1}}, 2)).has_value());
    CHECK_THROWS_AS(invert(FieldMatrix(2, 3, 2)), std::invalid_argument);
}

TEST_CASE("every computed inverse multiplies back to the identity") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint32_t q = (trial % 3 == 0) ? 3 : (trial % 3 == 1 ? 2 : 251);
        const std::size_t n = 1 + rng() % 4;
        FieldMatrix m(n, n, q);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m.set(i, j, rng() % q);
        }
        auto inv = invert(m);
        if (inv) {
            CHECK(mat_mul(m, *inv) == FieldMatrix::identity(n, q));
            CHECK(mat_mul(*inv, m) == FieldMatrix::identity(n, q));
        } else {
            CHECK(rank(m) < n);
        }
    }
}

TEST_CASE("solve_membership") {
    CHECK(*solve_membership({{1, 0}}, {1, 0}, 2) == std::vector<std::uint32_t>{1});
    CHECK_FALSE(solve_membership({{1, 0}}, {0, 1}, 2).has_value());

    // e1 = (e1 + e2) + e2 over GF(2)
    auto coeffs = solve_membership({{1, 1}, {0, 1}}, {1, 0}, 2);
    REQUIRE(coeffs.has_value());
    CHECK(*coeffs == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("solve_membership coefficients recompute the target exactly") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 80; ++trial) {
        const std::uint32_t q = trial % 2 == 0 ? 2 : 3;
        const std::size_t dim = 2 + rng() % 4;
        const std::size_t count = 1 + rng() % 4;
        std::vector<std::vector<std::uint32_t>> basis(count,
                                                      std::vector<std::uint32_t>(dim, 0));
        for (auto& vec : basis) {
            for (auto& v : vec) v = rng() % q;
        }
        std::vector<std::uint32_t> target(dim, 0);
        for (auto& v : target) v = rng() % q;
        auto coeffs = solve_membership(basis, target, q);
        if (!coeffs) continue;
        std::vector<std::uint32_t> sum(dim, 0);
        for (std::size_t b = 0; b < count; ++b) {
            for (std::size_t i = 0; i < dim; ++i) {
                sum[i] = (sum[i] + (*coeffs)[b] * basis[b][i]) % q;
            }
        }
        CHECK(sum == target);
    }
}

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(FieldMatrix(2, 2, 4), std::invalid_argument);
    CHECK_THROWS_AS(FieldMatrix(2, 2, 257), std::invalid_argument);
    CHECK(is_prime_modulus(251));
    CHECK_FALSE(is_prime_modulus(1));
}
