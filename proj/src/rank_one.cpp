#include "indexdensity/rank_one.hpp"

#include <numeric>

#include "indexdensity/error.hpp"
#include "indexdensity/euler_kappa.hpp"

namespace indexdensity {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Rational artin_generic(const BigInt& ell) { return 1 - Rational(1, ell * (ell - 1)); }

// [F_ell : Q] for Gamma = <a>: ell(ell - 1)/(h, ell), except F_2 = 2 when a < 0.
BigInt field_degree(const RankOneDecomposition& dec, const BigInt& ell) {
    if (ell == 2 && dec.sign < 0) return 2;
    const BigInt g = dec.h % ell == 0 ? ell : BigInt(1);
    return ell * (ell - 1) / g;
}

std::vector<BigInt> prime_divisors(const BigInt& n) {
    std::vector<BigInt> out;
    if (abs(n) <= 1) return out;
    for (const auto& [p, e] : factor(n)) out.push_back(p);
    return out;
}

DensityValue from_kappa1(const Rational& R, const Real& precision) {
    DensityValue out;
    out.rational = R;
    out.rank = 1;
    if (R == 0) {
        out.exact_zero = true;
        out.value = 0;
        out.error_bound = 0;
        return out;
    }
    const auto kappa = euler_kappa(1, precision);
    const Real r = to_real(R);
    out.value = r * kappa.kappa_odd;
    out.error_bound = abs(r) * kappa.precision + abs(out.value) * Real("1e-95");
    return out;
}

// rho(<a>, m) for odd m, Moebius-free form; m = 1 gives the Hooley product.
Rational single_generator_odd(const RankOneDecomposition& dec, u64 m) {
    const BigInt M(m);
    Rational correction = 0;
    if (dec.h % 2 == 1 && dec.d % 2 != 0) {
        Rational prod = 1;
        for (const auto& ell : prime_divisors(dec.d)) {
            if (ell == 2 || M % ell == 0) continue;
            prod *= Rational(-1, field_degree(dec, ell) - 1);
        }
        correction = prod;
    }
    Rational R = 1 - correction;
    R *= Rational(std::gcd(m, static_cast<u64>(dec.h)), M * M);
    for (const auto& [ell, e] : factor_u64(m)) {
        if (valuation(static_cast<u64>(dec.h), ell) <= e) R *= Rational(ell + 1, ell);
        R /= artin_generic(BigInt(ell));  // folded into kappa_1 but ell | m is excluded
    }
    // ell = 2 never divides m here
    R *= 1 - Rational(1, field_degree(dec, 2));
    for (const auto& [ell, e] : factor_u64(dec.h)) {
        if (ell == 2 || m % ell == 0) continue;
        const BigInt L(ell);
        R *= (1 - Rational(1, field_degree(dec, L))) / artin_generic(L);
    }
    return R;
}

}  // namespace

RankOneDecomposition decompose(const Rational& a) {
    if (a == 0 || a == 1 || a == -1) throw Error(ErrorCode::DegenerateInput, "a must not be 0 or +-1");
    RankOneDecomposition dec;
    dec.a = a;
    dec.sign = a < 0 ? -1 : 1;
    const BigInt num = abs(numerator(a)), den = denominator(a);

    std::vector<std::pair<BigInt, long long>> exps;
    if (num != 1)
        for (const auto& [p, e] : factor(num)) exps.emplace_back(p, static_cast<long long>(e));
    if (den != 1)
        for (const auto& [p, e] : factor(den)) exps.emplace_back(p, -static_cast<long long>(e));

    long long h = 0;
    for (const auto& [p, e] : exps) h = std::gcd(h, e < 0 ? -e : e);
    dec.h = static_cast<unsigned>(h);
    dec.v2h = valuation(static_cast<u64>(h), 2);

    BigInt a0n = 1, a0d = 1, a1 = 1;
    for (const auto& [p, e] : exps) {
        const long long f = e / h;
        if (f > 0) a0n *= boost::multiprecision::pow(p, static_cast<unsigned>(f));
        else a0d *= boost::multiprecision::pow(p, static_cast<unsigned>(-f));
        if (f % 2 != 0) {
            a1 *= p;
            dec.a1_primes.push_back(p);
        }
    }
    std::sort(dec.a1_primes.begin(), dec.a1_primes.end());
    dec.a0 = Rational(a0n, a0d);
    dec.a1 = a1;
    const Rational sq = dec.a0 / a1;
    dec.a2 = Rational(sqrt(numerator(sq)), sqrt(denominator(sq)));
    // for a < 0 and h odd, a = (-a0)^h and the quadratic subfield is Q(sqrt(-a0))
    dec.d = quadratic_discriminant(dec.sign < 0 && h % 2 == 1 ? BigInt(-a1) : a1);
    return dec;
}

DensityValue hooley_density(const RankOneDecomposition& dec, const Real& precision) {
    return from_kappa1(single_generator_odd(dec, 1), precision);
}

DensityValue moree_odd_density(const RankOneDecomposition& dec, u64 m, const Real& precision) {
    if (m == 0 || m % 2 == 0) throw Error(ErrorCode::ParityViolation, "odd m required");
    return from_kappa1(single_generator_odd(dec, m), precision);
}

int epsilon_minus_one_a(const RankOneDecomposition& dec, u64 m) {
    const unsigned vm = valuation(m, 2);
    if (vm <= dec.v2h) return 0;
    const bool even_ha1 = dec.h % 2 == 0 || dec.a1 % 2 == 0;
    if (vm == 1 && even_ha1) return 0;
    return 1;
}

Rational tau_minus_one_a(const RankOneDecomposition& dec, u64 m) {
    const unsigned vm = valuation(m, 2), vh = dec.v2h;
    const bool even_ha1 = dec.h % 2 == 0 || dec.a1 % 2 == 0;
    if (vh > vm) return 0;
    if (vh == vm) {
        if (vm == 0) return even_ha1 ? Rational(0) : Rational(-1, 3);
        return Rational(-1, 3);
    }
    if (vm == 1) return even_ha1 ? Rational(-1, 3) : Rational(1);
    return 1;
}

Rational minus_one_a_bracket(const RankOneDecomposition& dec, u64 m) {
    const BigInt M(m);
    Rational prod = 1;
    for (const auto& ell : dec.a1_primes) {
        if (ell == 2 || M % ell == 0) continue;
        const BigInt g = dec.h % ell == 0 ? ell : BigInt(1);
        prod *= Rational(-g, ell * ell - ell - g);
    }
    return 1 + tau_minus_one_a(dec, m) * prod;
}

DensityValue minus_one_a_density(const RankOneDecomposition& dec, u64 m, const Real& precision) {
    if (dec.sign < 0) throw Error(ErrorCode::NegativeBase, "a must be positive");
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "m must be positive");
    const BigInt M(m);
    const u64 h = dec.h;
    Rational R(std::gcd(m, h), 2 * M * M);
    std::vector<u64> divisors_2m;
    for (const auto& [ell, e] : factor_u64(2 * m)) {
        const Rational l(ell);
        R *= (l * l - l) / (l * l - l - 1);
        if (valuation(m, ell) >= valuation(h, ell)) R *= (l + 1) / l;
    }
    for (const auto& [ell, e] : factor_u64(h)) {
        if ((2 * m) % ell == 0) continue;
        const Rational l(ell);
        R *= (l * l - 2 * l) / (l * l - l - 1);
    }
    R *= minus_one_a_bracket(dec, m);
    // A = kappa_1 / 2
    return from_kappa1(R / 2, precision);
}

DensityValue minus_one_a_density(const Rational& a, u64 m, const Real& precision) {
    return minus_one_a_density(decompose(abs(a)), m, precision);
}

}  // namespace indexdensity
