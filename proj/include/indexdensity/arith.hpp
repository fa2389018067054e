#pragma once

// Elementary arithmetic shared by every module: small-prime tables,
// machine-word modular arithmetic, integer factorization and quadratic
// discriminants.

#include <cstdint>
#include <span>
#include <vector>

#include "indexdensity/numeric.hpp"

namespace indexdensity {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct PrimePower {
    u64 prime;
    unsigned exponent;
};

struct BigPrimePower {
    BigInt prime;
    unsigned exponent;
};

/// All primes p <= limit, ascending.
std::vector<std::uint32_t> primes_up_to(u64 limit);

/// Factorization of a machine word by trial division (n >= 1).
std::vector<PrimePower> factor_u64(u64 n);

/// Factorization of |n| for n != 0: trial division to 10^6, then Miller-Rabin
/// and Pollard-Brent. Throws FactorizationOverflow when a cofactor resists the
/// rho iteration budget.
std::vector<BigPrimePower> factor(const BigInt& n);

bool is_probable_prime(const BigInt& n);

unsigned valuation(u64 n, u64 p);
unsigned valuation(const BigInt& n, u64 p);

u64 euler_phi(u64 n);
int mobius(u64 n);
u64 two_part(u64 n);
u64 odd_part(u64 n);

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m);
u64 inverse_mod(u64 a, u64 m);
u64 ipow(u64 base, unsigned exp);

/// Discriminant of Q(sqrt(s)) for a squarefree integer s; 1 when s == 1.
BigInt quadratic_discriminant(const BigInt& squarefree);

/// Divisibility a | b, comparing absolute values; a != 0.
inline bool divides(const BigInt& a, const BigInt& b) {
    return b % abs(a) == 0;
}

}  // namespace indexdensity
