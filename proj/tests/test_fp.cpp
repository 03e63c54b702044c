#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "opal/fp.hpp"
#include "support/pascal.hpp"

using namespace opal;

TEST_CASE("primality screen") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(11));
    CHECK(is_prime(251));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(-7));
    CHECK_FALSE(is_prime(9));
    CHECK_FALSE(is_prime(91));  // 7 * 13
}

TEST_CASE("CoeffTables rejects bad moduli") {
    CHECK_THROWS_AS(CoeffTables(1), std::invalid_argument);
    CHECK_THROWS_AS(CoeffTables(2), std::invalid_argument);
    CHECK_THROWS_AS(CoeffTables(4), std::invalid_argument);
    CHECK_THROWS_AS(CoeffTables(9), std::invalid_argument);
    CHECK_NOTHROW(CoeffTables(3));
    CHECK_NOTHROW(CoeffTables(13));
}

TEST_CASE("binomials against the Pascal oracle") {
    for (int p : {3, 5, 7, 11}) {
        auto tri = oracle::pascal_mod(120, p);
        for (int n = 0; n <= 120; ++n)
            for (int k = 0; k <= n; ++k)
                CHECK(binom_mod(n, k, p) == tri[n][k]);
        // k > n vanishes
        CHECK(binom_mod(4, 9, p) == 0);
    }
}

TEST_CASE("frozen binomial values") {
    CHECK(binom_mod(11, 3, 3) == 0);  // 165 = 3 * 55
    CHECK(binom_mod(8, 1, 3) == 2);
    // the family C((p-1)^2 p^k - 1, p^k) vanishes mod p
    for (auto [p, k] : {std::pair{3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 1}}) {
        i64 pk = 1;
        for (int j = 0; j < k; ++j) pk *= p;
        CHECK(binom_mod(i64(p - 1) * (p - 1) * pk - 1, pk, p) == 0);
    }
}

TEST_CASE("signed binomial: Pascal identity on the extended range") {
    for (int p : {3, 5, 7}) {
        for (i64 n = -20; n <= 20; ++n)
            for (i64 k = 0; k <= 20; ++k) {
                int lhs = binom_signed(n, k, p);
                int rhs = (binom_signed(n - 1, k - 1, p) + binom_signed(n - 1, k, p)) % p;
                CHECK(lhs == rhs);
            }
        // spot values: C(-1,k) = (-1)^k, C(-2,k) = (-1)^k (k+1)
        for (i64 k = 0; k <= 10; ++k) {
            CHECK(binom_signed(-1, k, p) == ((sign_pow(k) % p) + p) % p);
            CHECK(binom_signed(-2, k, p) == ((sign_pow(k) * (k + 1)) % p + p) % p);
        }
        CHECK(binom_signed(-1, -3, p) == 0);
    }
    // agrees with the plain binomial on n >= 0
    for (i64 n = 0; n <= 30; ++n)
        for (i64 k = 0; k <= 30; ++k) CHECK(binom_signed(n, k, 5) == binom_mod(n, k, 5));
}

TEST_CASE("inverses") {
    for (int p : {3, 5, 7, 11}) {
        for (int a = 1; a < p; ++a) CHECK(a * inv_mod(a, p) % p == 1);
        CHECK_THROWS_AS(inv_mod(0, p), std::domain_error);
        CHECK_THROWS_AS(inv_mod(p, p), std::domain_error);
        CHECK_THROWS_AS(inv_mod(-2 * i64(p), p), std::domain_error);
    }
}

TEST_CASE("nu: direct product oracle and frozen values") {
    for (int p : {3, 5, 7, 11}) {
        CoeffTables ct(p);
        for (i64 q = 0; q <= 24; ++q) {
            // oracle: multiply out (-1) ((p-1)q/2 times) and ((p-1)/2)! literally
            i64 v = 1;
            for (i64 j = 0; j < i64(p - 1) / 2 * q; ++j) v = v * (p - 1) % p;
            for (i64 j = 2; j <= (p - 1) / 2; ++j) v = v * j % p;
            CHECK(ct.nu(q) == v);
        }
        CHECK(ct.half_factorial_square_identity());
    }
    CoeffTables c3(3), c5(5), c7(7);
    CHECK(c3.nu(0) == 1);
    CHECK(c3.nu(1) == 2);  // (-1)^q at p = 3
    CHECK(c5.nu(0) == 2);
    CHECK(c5.nu(1) == 2);  // constant 2 at p = 5
    CHECK(c5.nu(2) == 2);
    CHECK(c7.nu(0) == 6);
    CHECK(c7.nu(1) == 1);
}

TEST_CASE("gamma: direct product oracle, frozen values") {
    for (int p : {3, 5, 7}) {
        CoeffTables ct(p);
        for (i64 q = 0; q <= 12; ++q)
            for (i64 r = 0; r <= 40; ++r) {
                i64 t = r / (p - 1), v = 1;
                for (i64 i = 0; i < t; ++i) v = v * ct.nu(q + i) % p;
                CHECK(ct.gamma(q, r) == v);
            }
        CHECK(ct.gamma(5, 0) == 1);                 // empty product
        CHECK(ct.gamma(4, p - 2) == 1);             // still t = 0
        CHECK(ct.gamma(4, p - 1) == ct.nu(4));      // t = 1
    }
    CoeffTables c3(3);
    CHECK(c3.gamma(0, 2) == 1);
    CHECK(c3.gamma(1, 2) == 2);
    for (i64 q = 0; q <= 6; ++q) CHECK(c3.gamma(q, 4) == 2);  // nu(q) nu(q+1) = -1
    CHECK_THROWS_AS(c3.gamma(0, -1), std::invalid_argument);
}

TEST_CASE("lambda: ambient dimension explicit") {
    CoeffTables c3(3), c5(5);
    for (i64 q = 0; q <= 8; ++q) {
        CHECK(c3.lambda_(q, 1) == 1);          // empty product
        CHECK(c3.lambda_(q, 2) == c3.nu(q));   // single factor
    }
    CHECK(c3.lambda_(0, 3) == 2);  // nu(0) nu(1) = -1
    CHECK(c5.lambda_(0, 3) == 4);  // 2 * 2
    CHECK_THROWS_AS(c3.lambda_(0, 0), std::invalid_argument);
    // lambda(q, n) == gamma(q, (n-1)(p-1)) : same product length
    for (int p : {3, 5}) {
        CoeffTables ct(p);
        for (i64 q = 0; q <= 6; ++q)
            for (i64 n = 1; n <= 6; ++n)
                CHECK(ct.lambda_(q, n) == ct.gamma(q, (n - 1) * (p - 1)));
    }
}

TEST_CASE("pow_mod basics") {
    CHECK(pow_mod(2, 10, 11) == 1);   // Fermat
    CHECK(pow_mod(-1, 3, 7) == 6);
    CHECK(pow_mod(5, 0, 3) == 1);
}
