#include <doctest.h>

#include "indexdensity/error.hpp"
#include "indexdensity/rational_lattice.hpp"
#include "support/brute_force.hpp"

using namespace indexdensity;

namespace {
ExponentLattice lat(const char* s) { return ExponentLattice::build(GroupSpec::parse(s)); }
}  // namespace

TEST_CASE("parse") {
    auto g = GroupSpec::parse(" 2, -3/4 ,6/9");
    REQUIRE(g.generators.size() == 3);
    CHECK(g.to_string() == "2,-3/4,2/3");
    CHECK_THROWS_AS(GroupSpec::parse("2,,3"), Error);
    CHECK_THROWS_AS(GroupSpec::parse("2/0"), Error);
    try {
        GroupSpec::parse("0");
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroGenerator);
    }
}

TEST_CASE("smith form of <12,18>") {
    auto L = lat("12,18");
    REQUIRE(L.smith().diagonal.size() == 2);
    CHECK(L.smith().diagonal[0] == 1);
    CHECK(L.smith().diagonal[1] == 3);
    REQUIRE(L.bad_primes().size() == 1);
    CHECK(L.bad_primes()[0] == 3);
    CHECK(L.rank() == 2);
    CHECK(L.gamma_m_order(3) == 3);
    CHECK(L.gamma_ell(3) == 3);
}

TEST_CASE("orders of small groups") {
    CHECK(lat("2,3").gamma_m_order(4) == 16);
    CHECK(lat("-1,8").gamma_ell(3) == 1);
    CHECK(lat("-1,8").gamma_m_order(3) == 1);
    CHECK(lat("-1").gamma_m_order(2) == 2);
    CHECK(lat("-1").gamma_m_order(3) == 1);
    CHECK(lat("4").gamma_m_order(2) == 1);
    CHECK(lat("-4").gamma_m_order(2) == 2);
    CHECK(lat("-4").gamma_m_order(4) == 2);
    CHECK(lat("1").gamma_m_order(12) == 1);
}

TEST_CASE("orders and two-torsion agree with enumeration") {
    const char* groups[] = {"2",     "-1",     "-4",     "12,18",   "-1,8",    "2,3",  "-2,-3",
                            "-1,2,3", "-8,9/4", "16,-27", "-64",     "3/5,-1", "27",   "-3",
                            "4,-9",  "-1,-4",  "1,-16"};
    for (const char* g : groups) {
        auto L = lat(g);
        for (u64 m = 1; m <= 36; ++m) {
            auto all = oracle::enumerate_gamma_m(L, m);
            INFO(g << " m=" << m);
            CHECK(L.gamma_m_order(m) == all.size());
        }
        for (unsigned a = 1; a <= 6; ++a) {
            const u64 n = u64{1} << a;
            auto brute = oracle::brute_two_torsion(L, n);
            auto fast = L.two_torsion(a);
            INFO(g << " alpha=" << a);
            CHECK(fast == brute);
        }
    }
}

TEST_CASE("power-free representatives") {
    auto L = lat("-1,2,3");
    auto entries = L.two_torsion_entries(2);
    CHECK(entries.size() == 8);
    CHECK(entries.front().coset.is_identity());
    for (const auto& e : entries) {
        CHECK(e.rep.power == 2);
        CHECK(e.rep.delta == quadratic_discriminant(e.rep.gamma0));
    }
    auto L2 = lat("18");
    auto c = L2.generator_coset(0, 2);
    auto rep = L2.power_free_rep(c);
    CHECK(rep.gamma0 == 2);
    CHECK(rep.delta == 8);
    CHECK(rep.gamma_prime() == 2);
    CHECK_THROWS_AS(L2.power_free_rep(L2.generator_coset(0, 4)), Error);
}
