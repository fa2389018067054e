#include "indexdensity/arith.hpp"

#include <algorithm>
#include <numeric>

#include <boost/multiprecision/miller_rabin.hpp>

#include "indexdensity/error.hpp"

namespace indexdensity {

std::vector<std::uint32_t> primes_up_to(u64 limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

std::vector<PrimePower> factor_u64(u64 n) {
    std::vector<PrimePower> out;
    if (n <= 1) return out;
    auto take = [&](u64 p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.push_back({p, e});
    };
    take(2);
    take(3);
    for (u64 p = 5; p * p <= n; p += 6) {
        take(p);
        take(p + 2);
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

bool is_probable_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    // 25 random bases on top of the fixed-base trial; deterministic below 2^64.
    return boost::multiprecision::miller_rabin_test(n, 25);
}

namespace {

constexpr u64 kTrialLimit = 1'000'000;
constexpr unsigned kRhoBudget = 2'000'000;

BigInt gcd_big(BigInt a, BigInt b) {
    return boost::multiprecision::gcd(a, b);
}

// Pollard-Brent; returns a nontrivial factor or 0 when the budget runs out.
BigInt pollard_brent(const BigInt& n) {
    if (n % 2 == 0) return 2;
    for (unsigned c = 1; c < 64; ++c) {
        BigInt y = 2, x, q = 1, g = 1, ys;
        const unsigned batch = 128;
        unsigned r = 1;
        unsigned iterations = 0;
        auto f = [&](const BigInt& v) { return (v * v + c) % n; };
        while (g == 1) {
            x = y;
            for (unsigned i = 0; i < r; ++i) y = f(y);
            unsigned k = 0;
            while (k < r && g == 1) {
                ys = y;
                const unsigned steps = std::min(batch, r - k);
                for (unsigned i = 0; i < steps; ++i) {
                    y = f(y);
                    q = q * abs(x - y) % n;
                }
                g = gcd_big(q, n);
                k += steps;
                iterations += steps;
            }
            r *= 2;
            if (iterations > kRhoBudget) return 0;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_big(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
    return 0;
}

void factor_rec(const BigInt& n, std::vector<BigInt>& primes) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        primes.push_back(n);
        return;
    }
    const BigInt d = pollard_brent(n);
    if (d == 0) {
        throw Error(ErrorCode::FactorizationOverflow, "could not factor " + n.str());
    }
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

}  // namespace

std::vector<BigPrimePower> factor(const BigInt& value) {
    if (value == 0) throw Error(ErrorCode::InvalidArgument, "factor(0)");
    BigInt n = abs(value);
    std::vector<BigPrimePower> out;
    for (u64 p = 2; p <= kTrialLimit && BigInt(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({BigInt(p), e});
    }
    if (n == 1) return out;
    std::vector<BigInt> primes;
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    for (const auto& p : primes) {
        if (!out.empty() && out.back().prime == p) {
            ++out.back().exponent;
        } else {
            out.push_back({p, 1});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.prime < b.prime; });
    return out;
}

unsigned valuation(u64 n, u64 p) {
    if (n == 0) return 0;
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

unsigned valuation(const BigInt& value, u64 p) {
    if (value == 0) return 0;
    BigInt n = abs(value);
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

u64 euler_phi(u64 n) {
    u64 result = n;
    for (const auto& [p, e] : factor_u64(n)) result = result / p * (p - 1);
    return result;
}

int mobius(u64 n) {
    int mu = 1;
    for (const auto& [p, e] : factor_u64(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

u64 two_part(u64 n) { return n & (~n + 1); }

u64 odd_part(u64 n) { return n / two_part(n); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 inverse_mod(u64 a, u64 m) {
    // extended Euclid on signed 128-bit to avoid overflow near 2^63
    __int128 t = 0, new_t = 1, r = m, new_r = a % m;
    while (new_r != 0) {
        const __int128 q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw Error(ErrorCode::InvalidArgument, "inverse_mod: not invertible");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

u64 ipow(u64 base, unsigned exp) {
    u64 r = 1;
    while (exp--) r *= base;
    return r;
}

BigInt quadratic_discriminant(const BigInt& s) {
    if (s == 1) return 1;
    BigInt r = s % 4;
    if (r < 0) r += 4;
    return r == 1 ? s : 4 * s;
}

}  // namespace indexdensity
