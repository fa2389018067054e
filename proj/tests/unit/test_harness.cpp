#include <doctest.h>

#include <cmath>

#include "indexdensity/density.hpp"
#include "indexdensity/error.hpp"
#include "indexdensity/prime_harness.hpp"
#include "support/brute_force.hpp"

using namespace indexdensity;

namespace {

ExponentLattice lat(const std::string& s) { return ExponentLattice::build(GroupSpec::parse(s)); }

IndexHistogram run(const std::string& g, u64 x, u64 m_max, unsigned threads = 1, u64 segment = 1u << 22, u64 x_lo = 0) {
    ScanOptions o;
    o.x = x;
    o.x_lo = x_lo;
    o.m_max = m_max;
    o.threads = threads;
    o.segment_size = segment;
    return scan(GroupSpec::parse(g), o);
}

bool same(const IndexHistogram& a, const IndexHistogram& b) {
    return a.counts == b.counts && a.overflow == b.overflow && a.excluded == b.excluded && a.total_primes == b.total_primes &&
           a.x_lo == b.x_lo && a.x_hi == b.x_hi && a.group == b.group;
}

const std::vector<std::string> kGroups = {"2", "-1,2", "2,3", "-1,27", "3/4", "-2,-3", "12,18", "-1,2,3", "5/7,11", "-6"};

}  // namespace

TEST_CASE("index examples") {
    CHECK(index_of(7, lat("2")) == 2);
    CHECK(index_of(7, lat("-1,2")) == 1);
    CHECK(index_of(17, lat("-1,27")) != 2);
    try {
        index_of(3, lat("-1,27"));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SupportPrime);
    }
    CHECK_THROWS_AS(index_of(7, lat("7/2")), Error);
    CHECK_THROWS_AS(index_of(8, lat("3")), Error);
}

TEST_CASE("index against subgroup enumeration") {
    for (const auto& g : kGroups) {
        const auto L = lat(g);
        for (u64 p : primes_up_to(10000)) {
            if (p == 2) continue;
            std::vector<u64> res;
            bool support = false;
            for (const auto& x : L.spec().generators) {
                const u64 r = oracle::residue(x, p);
                support = support || r == 0;
                res.push_back(r);
            }
            INFO(g << " p=" << p);
            if (support) {
                CHECK_THROWS_AS(index_of(p, L), Error);
                continue;
            }
            const u64 idx = index_of(p, L);
            CHECK(idx == oracle::brute_index(res, p));
            CHECK((p - 1) % idx == 0);
        }
    }
}

TEST_CASE("scan histogram matches per-prime indices") {
    for (const auto& g : kGroups) {
        const auto L = lat(g);
        const u64 x = 30000, m_max = 12;
        const auto h = run(g, x, m_max, 1, 4096);
        std::vector<u64> counts(m_max, 0);
        u64 overflow = 0, excluded = 0;
        for (u64 p : primes_up_to(x)) {
            if (p == 2) {
                ++excluded;
                continue;
            }
            u64 idx = 0;
            try {
                idx = index_of(p, L);
            } catch (const Error&) {
                ++excluded;
                continue;
            }
            if (idx > m_max) ++overflow;
            else ++counts[idx - 1];
        }
        INFO(g);
        CHECK(h.counts == counts);
        CHECK(h.overflow == overflow);
        CHECK(h.excluded.size() == excluded);
        CHECK(h.prime_count() == 3245);
        for (u64 m = 1; m <= m_max; ++m) {
            if (h.count(m) == 0) continue;
            bool divides = false;
            for (u64 p : primes_up_to(x)) divides = divides || (p > 2 && (p - 1) % m == 0);
            CHECK(divides);
        }
    }
}

TEST_CASE("indices beyond 2^32") {
    const u64 lo = (u64{1} << 32) - 200000, hi = (u64{1} << 32) + 200000;
    for (const std::string g : {"-1,2", "2,3", "3/4"}) {
        const auto L = lat(g);
        const auto h = run(g, hi, 24, 2, 65536, lo);
        std::vector<u64> counts(24, 0);
        u64 overflow = 0, primes = 0;
        for (u64 n = lo | 1; n <= hi; n += 2) {
            if (!is_probable_prime(BigInt(n))) continue;
            ++primes;
            std::vector<u64> res;
            for (const auto& x : L.spec().generators) res.push_back(oracle::residue(x, n));
            const u64 idx = oracle::order_index(res, n);
            CHECK(index_of(n, L) == idx);
            if (idx > 24) ++overflow;
            else ++counts[idx - 1];
        }
        INFO(g);
        CHECK(h.counts == counts);
        CHECK(h.overflow == overflow);
        CHECK(h.prime_count() == primes);
    }
}

TEST_CASE("scan partition and exclusions") {
    const auto h = run("-1,2", 100000, 20);
    u64 sum = h.overflow;
    for (u64 c : h.counts) sum += c;
    CHECK(sum + 1 == 9592);
    CHECK(h.excluded == std::vector<u64>{2});
    CHECK(h.total_primes == sum);
    CHECK(run("2,3", 100000, 20).excluded == std::vector<u64>{2, 3});
    CHECK(run("5/7", 100000, 20).excluded == std::vector<u64>{2, 5, 7});
    CHECK(run("3", 100000, 20).excluded == std::vector<u64>{2, 3});
}

TEST_CASE("scan is independent of threads and segmentation") {
    for (const auto& g : {"-1,2", "2,3", "12,18"}) {
        const auto base = run(g, 2'000'000, 30, 1);
        for (unsigned t : {2u, 3u, 8u})
            for (u64 seg : {u64{1024}, u64{65536}, u64{1} << 20}) {
                INFO(g << " threads=" << t << " segment=" << seg);
                CHECK(same(base, run(g, 2'000'000, 30, t, seg)));
            }
    }
}

TEST_CASE("scan statistics at 1e6") {
    const auto a = run("-1,2", 1'000'000, 20, 4);
    CHECK(std::abs(static_cast<double>(a.count(1)) / a.prime_count() - 0.5609) < 0.002);
    const auto b = run("2,3", 1'000'000, 20, 4);
    CHECK(std::abs(static_cast<double>(b.count(2)) / b.prime_count() - 0.2051) < 0.003);
    CHECK(run("-1,27", 1'000'000, 20, 4).count(2) == 0);
    CHECK(run("-1,3375", 1'000'000, 20, 4).count(10) == 0);
    CHECK(run("-1,157464", 1'000'000, 20, 4).count(4) == 0);
}

TEST_CASE("scan preconditions") {
    ScanOptions o;
    o.x = 50;
    CHECK_THROWS_AS(scan(GroupSpec::parse("2"), o), Error);
    o.x = 100;
    o.m_max = 0;
    CHECK_THROWS_AS(scan(GroupSpec::parse("2"), o), Error);
    o.m_max = 5;
    o.x = 20'000'000'000ULL;
    try {
        scan(GroupSpec::parse("2"), o);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ResourceLimit);
    }
}

TEST_CASE("merge and JSON") {
    const auto full = run("-1,2", 1'000'000, 16, 2);
    const auto lo = run("-1,2", 499'999, 16, 1);
    const auto hi = run("-1,2", 1'000'000, 16, 3, 1u << 16, 500'000);
    CHECK(same(merge(lo, hi), full));
    CHECK(same(merge(hi, lo), full));
    CHECK(same(histogram_from_json(to_json(full, 2)), full));
    CHECK(histogram_from_json(to_json(full, -1)).x() == 1'000'000);

    CHECK_THROWS_AS(merge(lo, lo), Error);
    CHECK_THROWS_AS(merge(lo, run("2,3", 1'000'000, 16, 1, 1u << 22, 500'000)), Error);
    CHECK_THROWS_AS(merge(lo, run("-1,2", 1'000'000, 15, 1, 1u << 22, 500'000)), Error);
    CHECK_THROWS_AS(histogram_from_json("{not json"), Error);
    auto j = to_json(full, -1);
    j.replace(j.find("\"-1,2\""), 6, "\"-1,3\"");
    CHECK_THROWS_AS(histogram_from_json(j), Error);
}

TEST_CASE("compare flags") {
    const auto L = lat("-1,2");
    std::vector<DensityValue> d;
    for (u64 m = 1; m <= 8; ++m) d.push_back(rho(L, m));

    IndexHistogram synthetic;
    synthetic.m_max = 8;
    synthetic.total_primes = 10'000'000;
    for (u64 m = 1; m <= 8; ++m) synthetic.counts.push_back(static_cast<u64>(std::llround(static_cast<double>(d[m - 1].value) * 1e7)));
    CHECK(!compare(synthetic, d).any_flagged);

    const auto h = run("-1,2", 10'000'000, 8, 4);
    const auto r = compare(h, d);
    CHECK(!r.any_flagged);
    REQUIRE(r.rows.size() == 8);

    auto swapped = h;
    std::swap(swapped.counts[1], swapped.counts[2]);
    CHECK(compare(swapped, d).any_flagged);
}
