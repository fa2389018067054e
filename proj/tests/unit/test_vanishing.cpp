#include <doctest.h>

#include <algorithm>

#include "indexdensity/density.hpp"
#include "indexdensity/error.hpp"
#include "indexdensity/vanishing.hpp"
#include "support/families.hpp"
#include "support/reference_tables.hpp"

using namespace indexdensity;

namespace {

ExponentLattice lat(const std::string& s) { return ExponentLattice::build(GroupSpec::parse(s)); }

std::size_t count_in(const VanishVerdict& v, std::initializer_list<VanishCondition> cs) {
    return std::count_if(v.all_matched.begin(), v.all_matched.end(),
                         [&](VanishCondition c) { return std::find(cs.begin(), cs.end(), c) != cs.end(); });
}

std::vector<std::string> zero_family() {
    auto g = family::random_groups(40, {2, 3, 5}, 3, 3, 99u);
    for (const char* s : {"4", "16", "27", "-27", "-1,27", "27,125", "-4", "9,25", "-3", "-1,3375", "8,27", "1/27", "-1/8"})
        g.push_back(s);
    return g;
}

}  // namespace

TEST_CASE("<-1,a> criterion examples") {
    auto v = classify_minus_one_a(decompose(Rational(27)), 2);
    CHECK(v.matched == VanishCondition::W1);
    CHECK(v.finiteness == Finiteness::Finite);
    CHECK(classify_minus_one_a(decompose(Rational(729)), 8).matched == VanishCondition::W2);
    v = classify_minus_one_a(decompose(Rational(2)), 4);
    CHECK(!v.vanishes);
    CHECK(v.matched == VanishCondition::None);
    CHECK(v.finiteness == Finiteness::InfiniteOnGRH);
    for (const auto& p : reference::kMinusOneCubeZeros) {
        INFO("a=" << p.a << " m=" << p.m);
        CHECK(classify_minus_one_a(decompose(Rational(p.a)), p.m).vanishes);
    }
}

TEST_CASE("single generator criterion examples") {
    auto v = classify_lenstra(Rational(16), 1);
    CHECK(v.matched == VanishCondition::L1);
    CHECK(v.vanishes);
    CHECK(classify_lenstra(Rational(27), 2).vanishes == rho(lat("27"), 2).exact_zero);
    CHECK(classify_lenstra(Rational(-4), 2).matched == VanishCondition::L4);
    CHECK(rho(lat("-4"), 2).exact_zero);
    // m = 5: p = 1 mod 5 makes 5 a square mod p, so the index is never odd
    CHECK(classify_lenstra(Rational(5), 5).matched == VanishCondition::L1);
    CHECK(rho(lat("5"), 5).exact_zero);
    CHECK(!classify_lenstra(Rational(5), 3).vanishes);
    CHECK(!rho(lat("5"), 3).exact_zero);
    for (int g : {0, 1, -1}) CHECK_THROWS_AS(classify_lenstra(Rational(g), 2), Error);
}

TEST_CASE("sufficient conditions examples") {
    auto v = sufficient_vanishing(lat("4"), 1);
    CHECK(v.matched == VanishCondition::A);
    CHECK(v.finiteness == Finiteness::Finite);
    CHECK(sufficient_vanishing(lat("27"), 2).vanishes == rho(lat("27"), 2).exact_zero);
    v = sufficient_vanishing(lat("2,3"), 1);
    CHECK(!v.vanishes);
    CHECK(v.finiteness == Finiteness::InfiniteOnGRH);
    CHECK(sufficient_vanishing(lat("2,3"), 2).finiteness == Finiteness::Unknown);
    CHECK_THROWS_AS(sufficient_vanishing(lat("-1"), 2), Error);
}

TEST_CASE("single generator: both criteria agree with each other and the engine") {
    for (int g = -50; g <= 50; ++g) {
        if (g >= -1 && g <= 1) continue;
        const auto L = lat(std::to_string(g));
        for (u64 m = 1; m <= 24; ++m) {
            INFO("g=" << g << " m=" << m);
            CHECK(lenstra_consistency(Rational(g), m));
            const auto v = classify_lenstra(Rational(g), m);
            CHECK(v.vanishes == rho(L, m).exact_zero);
            CHECK(count_in(v, {VanishCondition::L1, VanishCondition::L2, VanishCondition::L3, VanishCondition::L4,
                               VanishCondition::L5, VanishCondition::L6}) <= 1);
        }
    }
}

TEST_CASE("sufficient conditions imply an exact zero") {
    for (const auto& s : zero_family()) {
        const auto L = lat(s);
        for (u64 m = 1; m <= 24; ++m) {
            const auto v = sufficient_vanishing(L, m);
            const bool zero = rho(L, m).exact_zero;
            INFO(s << " m=" << m);
            if (v.vanishes) CHECK(zero);
            if (v.matched != VanishCondition::None) CHECK(v.vanishes);
            // odd m: condition A is also necessary
            if (m % 2) CHECK(zero == (count_in(v, {VanishCondition::A}) == 1));
        }
    }
}

TEST_CASE("odd m completeness on the series family") {
    for (const auto& s : family::series_family()) {
        const auto L = lat(s);
        for (u64 m = 1; m <= 39; m += 2) {
            INFO(s << " m=" << m);
            CHECK(rho(L, m).exact_zero == (sufficient_vanishing(L, m).matched == VanishCondition::A));
        }
    }
}

TEST_CASE("<-1,a> criterion is exact") {
    std::vector<long> as;
    for (long a = 2; a <= 21; ++a) as.push_back(a);
    for (long n = 2; n * n * n <= 216000; ++n) as.push_back(n * n * n);
    for (long a : as) {
        const auto dec = decompose(Rational(a));
        const auto L = lat("-1," + std::to_string(a));
        for (u64 m = 1; m <= 40; ++m) {
            const auto v = classify_minus_one_a(dec, m);
            INFO("a=" << a << " m=" << m);
            CHECK(v.vanishes == rho(L, m).exact_zero);
            CHECK(count_in(v, {VanishCondition::W1, VanishCondition::W2}) <= 1);
        }
    }
    CHECK_THROWS_AS(classify_minus_one_a(decompose(Rational(-8)), 2), Error);
}

// The published cube list stops short of 54^3 = 2^3 3^9, which satisfies the
// second criterion at m = 4; the engine confirms the zero independently.
TEST_CASE("cube census") {
    std::vector<BigInt> cubes;
    for (long n = 2; n * n * n <= 216000; ++n) cubes.emplace_back(n * n * n);
    const auto hits = minus_one_a_census(cubes, 40);
    for (const auto& p : reference::kMinusOneCubeZeros) {
        const bool found = std::any_of(hits.begin(), hits.end(), [&](const CensusHit& h) { return h.a == p.a && h.m == p.m; });
        INFO("a=" << p.a);
        CHECK(found);
    }
    REQUIRE(hits.size() == reference::kMinusOneCubeZeros.size() + 1);
    const auto extra = std::find_if(hits.begin(), hits.end(), [](const CensusHit& h) { return h.a == 157464; });
    REQUIRE(extra != hits.end());
    CHECK(extra->m == 4);
    CHECK(extra->matched == VanishCondition::W2);
    CHECK(rho(lat("-1,157464"), 4).exact_zero);
    for (u64 m = 1; m < 4; ++m) CHECK(!rho(lat("-1,157464"), m).exact_zero);
}

TEST_CASE("discriminants of rationals") {
    CHECK(rational_discriminant(Rational(16)) == 1);
    CHECK(rational_discriminant(Rational(2)) == 8);
    CHECK(rational_discriminant(Rational(-3)) == -3);
    CHECK(rational_discriminant(Rational(3, 4)) == 12);
    CHECK(rational_discriminant(Rational(-1)) == -4);
}
