#include <doctest.h>

#include "indexdensity/arith.hpp"
#include "indexdensity/error.hpp"

using namespace indexdensity;

TEST_CASE("factor_u64 and phi") {
    auto f = factor_u64(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0].prime == 2);
    CHECK(f[0].exponent == 3);
    CHECK(euler_phi(360) == 96);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
    CHECK(two_part(40) == 8);
    CHECK(odd_part(40) == 5);
}

TEST_CASE("big factorization") {
    const BigInt p("18446744073709551557");  // largest prime below 2^64
    const BigInt q = BigInt(1000003) * 1000033;  // both beyond trial division
    auto f = factor(p * q * 12);
    REQUIRE(f.size() == 5);
    CHECK(f[0].prime == 2);
    CHECK(f[0].exponent == 2);
    CHECK(f[2].prime == 1000003);
    CHECK(f[3].prime == 1000033);
    CHECK(f[4].prime == p);
}

TEST_CASE("quadratic discriminant") {
    CHECK(quadratic_discriminant(1) == 1);
    CHECK(quadratic_discriminant(5) == 5);
    CHECK(quadratic_discriminant(-3) == -3);
    CHECK(quadratic_discriminant(-1) == -4);
    CHECK(quadratic_discriminant(2) == 8);
    CHECK(quadratic_discriminant(-2) == -8);
    CHECK(quadratic_discriminant(3) == 12);
}

TEST_CASE("modular helpers") {
    const u64 m = (u64{1} << 61) - 1;
    CHECK(pow_mod(3, m - 1, m) == 1);
    CHECK(mul_mod(inverse_mod(12345, m), 12345, m) == 1);
}
