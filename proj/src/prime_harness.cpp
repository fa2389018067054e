#include "indexdensity/prime_harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <thread>

#include "indexdensity/error.hpp"

namespace indexdensity {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

constexpr unsigned kMaxOddFactors = 15;  // distinct odd primes of any n < 2^64

struct Generator {
    bool negative;
    u128 num;
    u128 den;
};

std::vector<Generator> generators_of(const GroupSpec& spec) {
    std::vector<Generator> out;
    for (const auto& g : spec.generators) {
        if (g == 1) continue;
        const BigInt n = abs(numerator(g)), d = denominator(g);
        if (boost::multiprecision::msb(n) >= 127 || boost::multiprecision::msb(d) >= 127) {
            throw Error(ErrorCode::FactorizationOverflow, "generator exceeds 128-bit range");
        }
        out.push_back({g < 0, static_cast<u128>(n), static_cast<u128>(d)});
    }
    return out;
}

struct Mul32 {
    u64 p;
    u64 operator()(u64 a, u64 b) const { return a * b % p; }
};
struct Mul64 {
    u64 p;
    u64 operator()(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
};

template <class Mul>
u64 power(u64 b, u64 e, const Mul& mul) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

// Residues of the generators mod p; false when p divides a numerator or denominator.
bool residues(const std::vector<Generator>& gens, u64 p, std::vector<u64>& out) {
    out.clear();
    for (const auto& g : gens) {
        const u64 n = static_cast<u64>(g.num % p), d = static_cast<u64>(g.den % p);
        if (n == 0 || d == 0) return false;
        u64 r = d == 1 ? n : mul_mod(n, inverse_mod(d, p), p);
        if (g.negative) r = p - r;
        out.push_back(r);
    }
    return true;
}

// q^f divides the index iff every residue is a q^f-th power, i.e. g^((p-1)/q^f) = 1.
template <class Mul>
u64 index_core(u64 p, const std::vector<u64>& g, unsigned e2, const std::uint32_t* odd, unsigned n_odd,
               u64 big, u64 cap, const Mul& mul) {
    const u64 n = p - 1;
    u64 index = 1;
    auto process = [&](u64 q, unsigned e) {
        u64 qf = 1;
        for (unsigned f = 0; f < e; ++f) {
            const u64 t = n / (qf * q);
            for (u64 r : g)
                if (power(r, t, mul) != 1) return true;
            qf *= q;
            index *= q;
            if (index > cap) return false;
        }
        return true;
    };
    if (e2 && !process(2, e2)) return 0;
    u64 rest = n >> e2;
    for (unsigned i = 0; i < n_odd; ++i) {
        const u64 q = odd[i];
        unsigned e = 0;
        while (rest % q == 0) {
            rest /= q;
            ++e;
        }
        if (!process(q, e)) return 0;
    }
    if (big > 1 && !process(big, 1)) return 0;
    return index;
}

struct Worker {
    std::vector<u64> counts;
    u64 overflow = 0;
    std::vector<u64> excluded;
};

struct ScanContext {
    const std::vector<Generator>& gens;
    const std::vector<std::uint32_t>& base;  // odd primes <= sqrt(x)
    u64 m_max;
};

void process_segment(const ScanContext& ctx, u64 lo, u64 hi, Worker& w) {
    const u64 len = hi - lo;
    std::vector<std::uint8_t> composite(len, 0);
    for (u64 i = lo; i < std::min<u64>(hi, 2); ++i) composite[i - lo] = 1;
    for (u64 v = lo + (lo & 1); v < hi; v += 2)
        if (v != 2) composite[v - lo] = 1;
    for (std::uint32_t q : ctx.base) {
        const u64 qq = static_cast<u64>(q) * q;
        if (qq >= hi) break;
        u64 start = std::max(qq, (lo + q - 1) / q * q);
        if (start % 2 == 0) start += q;
        for (u64 v = start; v < hi; v += 2 * q) composite[v - lo] = 1;
    }

    std::vector<u64> primes;
    std::vector<std::int32_t> slot(len, -1);
    for (u64 i = 0; i < len; ++i) {
        if (composite[i]) continue;
        const u64 p = lo + i;
        if (p == 2) {
            w.excluded.push_back(2);
            continue;
        }
        slot[i] = static_cast<std::int32_t>(primes.size());
        primes.push_back(p);
    }

    // factor p - 1 by sieving: p = 1 mod q, p odd
    std::vector<std::uint32_t> factors(primes.size() * kMaxOddFactors);
    std::vector<std::uint8_t> n_factors(primes.size(), 0);
    std::vector<u64> residual(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const u64 n = primes[i] - 1;
        residual[i] = n >> __builtin_ctzll(n);
    }
    for (std::uint32_t q : ctx.base) {
        if (static_cast<u64>(q) * q > hi) break;
        // smallest p >= lo with p = 1 mod 2q
        const u64 step = 2 * static_cast<u64>(q);
        u64 p = lo <= 1 ? 1 : lo - 1 - (lo - 1) % step + 1;
        if (p < lo) p += step;
        for (; p < hi; p += step) {
            const std::int32_t s = slot[p - lo];
            if (s < 0) continue;
            factors[s * kMaxOddFactors + n_factors[s]++] = q;
            u64& r = residual[s];
            while (r % q == 0) r /= q;
        }
    }

    std::vector<u64> g;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const u64 p = primes[i];
        if (!residues(ctx.gens, p, g)) {
            w.excluded.push_back(p);
            continue;
        }
        const unsigned e2 = __builtin_ctzll(p - 1);
        const std::uint32_t* odd = &factors[i * kMaxOddFactors];
        const u64 idx = p < (u64{1} << 32)
                            ? index_core(p, g, e2, odd, n_factors[i], residual[i], ctx.m_max, Mul32{p})
                            : index_core(p, g, e2, odd, n_factors[i], residual[i], ctx.m_max, Mul64{p});
        if (idx == 0) ++w.overflow;
        else ++w.counts[idx - 1];
    }
}

}  // namespace

u64 group_fingerprint(const GroupSpec& spec) {
    u64 h = 1469598103934665603ULL;
    for (unsigned char c : spec.to_string()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

u64 index_of(u64 p, const ExponentLattice& L) {
    if (p < 3 || p % 2 == 0) throw Error(ErrorCode::InvalidArgument, "p must be an odd prime");
    std::vector<u64> g;
    if (!residues(generators_of(L.spec()), p, g)) throw Error(ErrorCode::SupportPrime, "p lies in Supp Gamma");
    const unsigned e2 = __builtin_ctzll(p - 1);
    std::vector<std::uint32_t> odd;
    u64 big = 1;
    for (const auto& [q, e] : factor_u64((p - 1) >> e2)) {
        if (q <= 0xffffffffULL) odd.push_back(static_cast<std::uint32_t>(q));
        else big = q;
    }
    const u64 cap = ~u64{0};
    return p < (u64{1} << 32) ? index_core(p, g, e2, odd.data(), static_cast<unsigned>(odd.size()), big, cap, Mul32{p})
                              : index_core(p, g, e2, odd.data(), static_cast<unsigned>(odd.size()), big, cap, Mul64{p});
}

IndexHistogram scan(const GroupSpec& spec, const ScanOptions& opt) {
    if (opt.x > opt.max_x) throw Error(ErrorCode::ResourceLimit, "x exceeds the configured maximum");
    if (opt.x < 100) throw Error(ErrorCode::InvalidArgument, "x must be at least 100");
    if (opt.m_max == 0) throw Error(ErrorCode::InvalidArgument, "m_max must be positive");
    if (opt.x_lo > opt.x) throw Error(ErrorCode::InvalidArgument, "empty range");
    if (opt.segment_size < 1024) throw Error(ErrorCode::InvalidArgument, "segment too small");

    const auto t0 = std::chrono::steady_clock::now();
    const auto gens = generators_of(spec);
    const u64 x_hi = opt.x + 1;
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(opt.x)));
    while (root * root > opt.x) --root;
    while ((root + 1) * (root + 1) <= opt.x) ++root;
    std::vector<std::uint32_t> base;
    for (auto q : primes_up_to(root))
        if (q != 2) base.push_back(q);

    const ScanContext ctx{gens, base, opt.m_max};
    const u64 n_segments = (x_hi - opt.x_lo + opt.segment_size - 1) / opt.segment_size;
    const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(std::max<u64>(n_segments, 1))));

    std::vector<Worker> workers(threads);
    for (auto& w : workers) w.counts.assign(opt.m_max, 0);
    std::atomic<u64> next{0};
    auto run = [&](Worker& w) {
        for (u64 s; (s = next.fetch_add(1)) < n_segments;) {
            const u64 lo = opt.x_lo + s * opt.segment_size;
            process_segment(ctx, lo, std::min(x_hi, lo + opt.segment_size), w);
        }
    };
    if (threads == 1) {
        run(workers[0]);
    } else {
        std::vector<std::thread> pool;
        for (auto& w : workers) pool.emplace_back(run, std::ref(w));
        for (auto& t : pool) t.join();
    }

    IndexHistogram h;
    h.group = spec.to_string();
    h.group_fingerprint = group_fingerprint(spec);
    h.x_lo = opt.x_lo;
    h.x_hi = x_hi;
    h.m_max = opt.m_max;
    h.counts.assign(opt.m_max, 0);
    for (const auto& w : workers) {
        for (u64 m = 0; m < opt.m_max; ++m) h.counts[m] += w.counts[m];
        h.overflow += w.overflow;
        h.excluded.insert(h.excluded.end(), w.excluded.begin(), w.excluded.end());
    }
    std::sort(h.excluded.begin(), h.excluded.end());
    h.total_primes = h.overflow;
    for (u64 c : h.counts) h.total_primes += c;
    h.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return h;
}

IndexHistogram merge(const IndexHistogram& a, const IndexHistogram& b) {
    if (a.group_fingerprint != b.group_fingerprint || a.group != b.group) {
        throw Error(ErrorCode::IncompatibleHistograms, "histograms belong to different groups");
    }
    if (a.m_max != b.m_max) throw Error(ErrorCode::IncompatibleHistograms, "m_max differs");
    const IndexHistogram& first = a.x_lo <= b.x_lo ? a : b;
    const IndexHistogram& second = a.x_lo <= b.x_lo ? b : a;
    if (first.x_hi != second.x_lo) throw Error(ErrorCode::IncompatibleHistograms, "ranges are not adjacent");
    IndexHistogram h = first;
    h.x_hi = second.x_hi;
    for (u64 m = 0; m < h.m_max; ++m) h.counts[m] += second.counts[m];
    h.overflow += second.overflow;
    h.total_primes += second.total_primes;
    h.excluded.insert(h.excluded.end(), second.excluded.begin(), second.excluded.end());
    std::sort(h.excluded.begin(), h.excluded.end());
    h.wall_seconds += second.wall_seconds;
    return h;
}

std::string to_json(const IndexHistogram& h, int indent) {
    nlohmann::ordered_json j;
    j["group"] = h.group;
    j["group_fingerprint"] = h.group_fingerprint;
    j["x"] = h.x();
    j["x_lo"] = h.x_lo;
    j["x_hi"] = h.x_hi;
    j["m_max"] = h.m_max;
    j["counts"] = h.counts;
    j["overflow"] = h.overflow;
    j["excluded"] = h.excluded;
    j["total_primes"] = h.total_primes;
    j["wall_seconds"] = h.wall_seconds;
    return j.dump(indent);
}

IndexHistogram histogram_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("histogram JSON: ") + e.what());
    }
    try {
        IndexHistogram h;
        h.group = j.at("group").get<std::string>();
        h.group_fingerprint = j.at("group_fingerprint").get<u64>();
        h.x_lo = j.value("x_lo", u64{0});
        h.x_hi = j.contains("x_hi") ? j.at("x_hi").get<u64>() : j.at("x").get<u64>() + 1;
        h.m_max = j.at("m_max").get<u64>();
        h.counts = j.at("counts").get<std::vector<u64>>();
        h.overflow = j.at("overflow").get<u64>();
        h.excluded = j.at("excluded").get<std::vector<u64>>();
        h.total_primes = j.at("total_primes").get<u64>();
        h.wall_seconds = j.value("wall_seconds", 0.0);
        if (h.counts.size() != h.m_max) throw Error(ErrorCode::ParseError, "counts length differs from m_max");
        if (h.group_fingerprint != group_fingerprint(GroupSpec::parse(h.group))) {
            throw Error(ErrorCode::IncompatibleHistograms, "fingerprint does not match group");
        }
        return h;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("histogram JSON: ") + e.what());
    }
}

ComparisonReport compare(const IndexHistogram& h, const std::vector<DensityValue>& densities) {
    ComparisonReport report;
    const double pi = static_cast<double>(h.prime_count());
    const u64 rows = std::min<u64>(h.m_max, densities.size());
    for (u64 m = 1; m <= rows; ++m) {
        ComparisonRow row;
        row.m = m;
        row.empirical = pi > 0 ? static_cast<double>(h.count(m)) / pi : 0.0;
        row.predicted = static_cast<double>(densities[m - 1].value);
        row.deviation = std::abs(row.empirical - row.predicted);
        row.sigma = pi > 0 ? std::sqrt(std::max(0.0, row.predicted * (1 - row.predicted)) / pi) : 0.0;
        row.flagged = row.deviation > 4 * row.sigma;
        report.any_flagged = report.any_flagged || row.flagged;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace indexdensity
