#include <doctest.h>

#include <cmath>

#include "indexdensity/density.hpp"
#include "indexdensity/error.hpp"
#include "indexdensity/euler_kappa.hpp"
#include "indexdensity/kummer.hpp"
#include "support/brute_force.hpp"
#include "support/families.hpp"

using namespace indexdensity;

namespace {

ExponentLattice lat(const std::string& s) { return ExponentLattice::build(GroupSpec::parse(s)); }

double dbl(const Real& x) { return static_cast<double>(x); }

}  // namespace

TEST_CASE("kappa against a direct product") {
    for (unsigned r = 1; r <= 4; ++r) {
        const auto k = euler_kappa(r);
        const auto [prod, tail] = oracle::kappa_direct(r, 10'000'000);
        INFO("r=" << r);
        // omitted factors lie in (1 - tail, 1]
        CHECK(dbl(k.kappa_odd) <= static_cast<double>(prod) + 1e-15);
        CHECK(dbl(k.kappa_odd) >= static_cast<double>(prod * (1 - tail)) - 1e-15);
        CHECK(k.precision < Real("1e-60"));
    }
}

TEST_CASE("kappa properties") {
    CHECK(abs(euler_kappa(1).kappa_odd - Real("0.747911627238404576109456")) < Real("1e-23"));
    CHECK(abs(artin_constant() - Real("0.373955813619202288054728")) < Real("1e-23"));
    Real prev = 0;
    for (unsigned r = 1; r <= 30; ++r) {
        const Real k = euler_kappa(r).kappa_odd;
        CHECK(k > prev);
        CHECK(k < 1);
        prev = k;
    }
    CHECK_THROWS_AS(euler_kappa(0), Error);
    try {
        euler_kappa(1, Real("1e-70"));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PrecisionUnreachable);
    }
}

TEST_CASE("A factor against the defining product") {
    // omitted factors (l > N, none bad) are each < 1 and multiply to at least 1 - 2/N
    constexpr u64 N = 200'000;
    for (const auto& s : std::vector<std::string>{"2,3", "-1,2", "12,18", "-1,27", "2,3,5", "3/4"}) {
        const auto L = lat(s);
        for (u64 m : {1, 2, 3, 5, 6, 9, 12}) {
            long double prod = 1;
            for (u64 l : primes_up_to(N)) {
                if (l == 2) continue;
                if (m % l == 0) {
                    u64 ml = 1;
                    while (m % (ml * l) == 0) ml *= l;
                    const long double a = static_cast<long double>(L.gamma_m_order(ml));
                    const long double b = static_cast<long double>(L.gamma_m_order(ml * l));
                    prod *= 1 - a / (l * b);
                } else {
                    prod *= 1 - 1 / ((l - 1.0L) * std::pow(static_cast<long double>(l), static_cast<long double>(L.rank_mod(l))));
                }
            }
            const double direct = static_cast<double>(prod / (euler_phi(m) * static_cast<long double>(L.gamma_m_order(m))));
            const double engine = dbl(a_factor(L, m).value);
            INFO(s << " m=" << m << " engine=" << engine << " direct=" << direct);
            CHECK(engine <= direct * (1 + 1e-12));
            CHECK(engine >= direct * (1 - 2.0 / N));
            CHECK(engine > 0);
        }
    }
    CHECK(abs(a_factor(lat("-1,2"), 1).value - euler_kappa(1).kappa_odd) < Real("1e-30"));
}

TEST_CASE("B factor examples") {
    for (u64 k : {1, 3, 5, 15}) CHECK(b_factor(lat("-1,3"), k) == 1);
    CHECK(b_factor(lat("-1,2"), 2) == 1);
    CHECK(b_factor(lat("-1,3"), 2) == Rational(4, 5));
}

TEST_CASE("rho examples") {
    CHECK(std::abs(dbl(rho(lat("-1,2"), 1).value) - 0.5609337) < 1e-7);
    CHECK(std::abs(dbl(rho(lat("2,3"), 2).value) - 0.205147) < 1e-6);
    CHECK(std::abs(dbl(rho(lat("-1,2,3"), 1).value) - 0.820590) < 1e-6);
    CHECK(std::abs(dbl(rho(lat("-1,3"), 2).value) - 0.1121867) < 1e-7);
    const auto z = rho(lat("-1,27"), 2);
    CHECK(z.exact_zero);
    CHECK(z.value == 0);
    CHECK(z.error_bound == 0);
    CHECK_THROWS_AS(rho(lat("-1"), 1), Error);
}

TEST_CASE("rho is a probability distribution in m") {
    for (const auto& s : std::vector<std::string>{"-1,2", "2", "2,3", "-1,2,3", "27", "3/4"}) {
        const auto L = lat(s);
        Real total = 0, err = 0;
        for (u64 m = 1; m <= 300; ++m) {
            const auto d = rho(L, m);
            CHECK(d.value >= -d.error_bound);
            CHECK(d.value <= 1 + d.error_bound);
            if (d.exact_zero) CHECK(d.rational == 0);
            total += d.value;
            err += d.error_bound;
        }
        INFO(s << " sum=" << total.str(10));
        CHECK(total <= 1 + err);
        CHECK(total > Real("0.99"));
    }
}

TEST_CASE("odd m: general formula equals the Gamma(2) specialization") {
    auto groups = family::series_family();
    for (const char* s : {"2", "-2", "3", "-3", "5", "-1,2", "-1,3", "2,3", "-1,2,3", "27", "-27", "8", "4"}) groups.push_back(s);
    for (const auto& s : groups) {
        const auto L = lat(s);
        for (u64 m = 1; m <= 45; m += 2) {
            const auto a = rho(L, m), b = rho_odd_formula(L, m);
            INFO(s << " m=" << m);
            CHECK(abs(a.value - b.value) < Real("1e-30"));
            CHECK(a.exact_zero == b.exact_zero);
        }
        CHECK_THROWS_AS(rho_odd_formula(L, 2), Error);
    }
}

TEST_CASE("series oracle examples") {
    const auto s = rho_series_oracle(lat("-1,2"), 1, 10000);
    CHECK(abs(s.value - Real("0.5609337")) <= s.tail_bound);
    CHECK(s.tail_bound < Real("0.01"));
    const auto z = rho_series_oracle(lat("-1,27"), 2, 10000);
    CHECK(abs(z.value) <= z.tail_bound);
    CHECK_THROWS_AS(rho_series_oracle(lat("2"), 1, 8), Error);
}

TEST_CASE("series oracle agrees with the closed form") {
    for (const auto& s : family::series_family()) {
        const auto L = lat(s);
        for (u64 m = 1; m <= 12; ++m) {
            const auto closed = rho(L, m);
            const auto series = rho_series_oracle(L, m, 10000);
            INFO(s << " m=" << m << " closed=" << closed.value.str(12) << " series=" << series.value.str(12)
                   << " tail=" << series.tail_bound.str(4));
            CHECK(abs(closed.value - series.value) <= series.tail_bound + closed.error_bound);
        }
    }
}

TEST_CASE("odd Moebius sum against its product") {
    struct Case {
        const char* group;
        u64 n, delta;
    };
    for (const auto& c : {Case{"2", 1, 1}, Case{"2", 1, 3}, Case{"2,3", 3, 5}, Case{"-1,2", 1, 15}, Case{"12,18", 3, 7}, Case{"5", 5, 3}}) {
        const auto L = lat(c.group);
        const auto r = lemma_tecn_check(L, c.n, c.delta, 10000);
        INFO(c.group << " n=" << c.n << " delta=" << c.delta);
        CHECK(abs(r.lhs_partial - r.rhs) <= r.bound);
    }
    const auto r = lemma_tecn_check(lat("2"), 1, 3, 10000);
    CHECK(abs(r.rhs + a_factor(lat("2"), 1).value / 5) < Real("1e-30"));
    try {
        lemma_tecn_check(lat("2"), 2, 3, 100);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParityViolation);
    }
}
