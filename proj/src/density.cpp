#include "indexdensity/density.hpp"

#include <cmath>

#include "indexdensity/error.hpp"
#include "indexdensity/euler_kappa.hpp"
#include "indexdensity/kummer.hpp"

namespace indexdensity {

namespace {

void require_rank(const ExponentLattice& L) {
    if (L.rank() == 0) throw Error(ErrorCode::RankZero, "density requires rank >= 1");
}

u64 checked_mul(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::ResourceLimit, "modulus overflows 64 bits");
    return r;
}

// 1 - 1/((ell-1) ell^r), the generic Euler factor folded into kappa_r.
Rational generic_factor(const BigInt& ell, unsigned r) {
    return 1 - Rational(1, (ell - 1) * boost::multiprecision::pow(ell, r));
}

Rational local_b_factor(const ExponentLattice& L, const BigInt& ell) {
    return Rational(-1, (ell - 1) * L.gamma_ell(ell) - 1);
}

DensityValue scale_kappa(const Rational& R, unsigned rank, const Real& precision) {
    DensityValue out;
    out.rational = R;
    out.rank = rank;
    if (R == 0) {
        out.exact_zero = true;
        out.value = 0;
        out.error_bound = 0;
        return out;
    }
    const auto kappa = euler_kappa(rank, precision);
    const Real r = to_real(R);
    out.value = r * kappa.kappa_odd;
    out.error_bound = abs(r) * kappa.precision + abs(out.value) * Real("1e-95");
    return out;
}

// Upper bound for sum_{k > X, squarefree} 1/(phi(k) k^r) using
// k/phi(k) < e^gamma lnln k + 2.51/lnln k (k >= 3) on dyadic blocks.
Real reciprocal_tail(double X, unsigned r) {
    constexpr u64 kExact = 64;
    Real total = 0;
    const u64 start = X < 0 ? 1 : static_cast<u64>(std::floor(X)) + 1;
    for (u64 k = start; k < kExact; ++k)
        if (mobius(k) != 0) total += Real(1) / (Real(euler_phi(k)) * pow(Real(k), static_cast<int>(r)));
    Real lo(start < kExact ? kExact : start);
    const Real euler_gamma = boost::math::constants::euler<Real>();
    for (int block = 0; block < 400; ++block) {
        const Real hi = lo * 2;
        const Real ll = log(log(hi));
        const Real ratio = exp(euler_gamma) * ll + Real("2.51") / ll;
        // at most (hi - lo + 1) terms, each below ratio / lo^(r+1)
        const Real term = (hi - lo + 1) * ratio / pow(lo, static_cast<int>(r + 1));
        total += term;
        if (term < total * Real("1e-30")) {
            // remaining blocks shrink at least geometrically by 2^-r * (slowly growing ratio)
            total += term * 2;
            break;
        }
        lo = hi;
    }
    return total;
}

// B bounds |Gamma(ell)| from below for every prime: ell^r / |Gamma(ell)| over
// the primes where the image is not full (bad primes and possibly 2).
Rational rank_defect(const ExponentLattice& L) {
    const unsigned r = static_cast<unsigned>(L.rank());
    Rational B = 1;
    const BigInt full2 = boost::multiprecision::pow(BigInt(2), r);
    if (L.gamma_ell(2) < full2) B *= Rational(full2, L.gamma_ell(2));
    for (const auto& ell : L.bad_primes()) B *= Rational(boost::multiprecision::pow(ell, r), L.gamma_ell(ell));
    return B;
}

std::vector<u64> divisors_of_radical(u64 m) {
    std::vector<u64> out{1};
    for (const auto& [p, e] : factor_u64(m)) {
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * p);
    }
    return out;
}

}  // namespace

Rational a_factor_rational(const ExponentLattice& L, u64 m) {
    require_rank(L);
    const unsigned r = static_cast<unsigned>(L.rank());
    Rational R(1, BigInt(euler_phi(m)) * L.gamma_m_order(m));
    std::vector<BigInt> corrected;
    for (const auto& [ell, e] : factor_u64(m)) {
        if (ell == 2) continue;
        const u64 m_ell = ipow(ell, e);
        const BigInt Ell(ell);
        R *= 1 - Rational(L.gamma_m_order(m_ell), Ell * L.gamma_m_order(checked_mul(ell, m_ell)));
        R /= generic_factor(Ell, r);
        corrected.push_back(Ell);
    }
    for (const auto& ell : L.bad_primes()) {
        if (m % ell == 0) continue;
        R *= (1 - Rational(1, (ell - 1) * L.gamma_ell(ell))) / generic_factor(ell, r);
    }
    return R;
}

DensityValue a_factor(const ExponentLattice& L, u64 m, const Real& precision) {
    return scale_kappa(a_factor_rational(L, m), static_cast<unsigned>(L.rank()), precision);
}

Rational b_factor(const ExponentLattice& L, u64 k) {
    require_rank(L);
    const BigInt K(k);
    Rational B = 0;
    for (const auto& e : tilde_gamma(L, k).elements) {
        Rational term = 1;
        for (const auto& ell : e.rep.core_primes) {
            if (ell == 2 || K % ell == 0) continue;
            term *= local_b_factor(L, ell);
        }
        B += term;
    }
    return B;
}

Rational rho_bracket(const ExponentLattice& L, u64 m) {
    require_rank(L);
    const u64 m2 = two_part(m);
    const Rational c(L.gamma_m_order(m2), BigInt(m % 2 == 0 ? 2 : 1) * L.gamma_m_order(checked_mul(2, m2)));
    return b_factor(L, m) - c * b_factor(L, checked_mul(2, m));
}

DensityValue rho(const ExponentLattice& L, u64 m, const Real& precision) {
    require_rank(L);
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "m must be positive");
    const Rational bracket = rho_bracket(L, m);
    if (bracket == 0) return scale_kappa(Rational(0), static_cast<unsigned>(L.rank()), precision);
    return scale_kappa(a_factor_rational(L, m) * bracket, static_cast<unsigned>(L.rank()), precision);
}

DensityValue rho_odd_formula(const ExponentLattice& L, u64 m, const Real& precision) {
    require_rank(L);
    if (m % 2 == 0) throw Error(ErrorCode::ParityViolation, "odd-m formula needs odd m");
    const BigInt g2 = L.gamma_m_order(2);
    const BigInt M(m);
    Rational sum = 1;
    for (const auto& e : L.two_torsion_entries(1)) {
        if (e.coset.is_identity()) continue;
        // disc Q(sqrt gamma') = 1 mod 4 exactly when gamma' = 1 mod 4
        BigInt g = e.rep.gamma_prime() % 4;
        if (g < 0) g += 4;
        if (g != 1) continue;
        Rational term(-1, g2 - 1);
        for (const auto& ell : e.rep.core_primes)
            if (ell != 2 && M % ell != 0) term *= local_b_factor(L, ell);
        sum += term;
    }
    const Rational R = a_factor_rational(L, m) * (1 - Rational(1, g2)) * sum;
    return scale_kappa(R, static_cast<unsigned>(L.rank()), precision);
}

SeriesEstimate rho_series_oracle(const ExponentLattice& L, u64 m, u64 K) {
    require_rank(L);
    if (K < 16) throw Error(ErrorCode::InvalidArgument, "K must be at least 16");
    SeriesEstimate out;
    Rational exact = 0;
    Real sum = 0;
    for (u64 k = 1; k <= K; ++k) {
        const int mu = mobius(k);
        if (mu == 0) continue;
        const u64 n = checked_mul(m, k);
        sum += Real(mu) / Real(kummer_degree(L, n, n));
        ++out.terms;
    }
    out.value = sum;

    // 1/deg(mk) <= B T / (phi(m) |Gamma(m)| s phi(k') k'^r), k = s k', s | rad m, (k', m) = 1
    const unsigned r = static_cast<unsigned>(L.rank());
    const unsigned v = valuation(m, 2);
    std::size_t T = 1;
    for (unsigned a : {v, v + 1})
        if (a >= 1 && a <= ExponentLattice::kMaxTwoAdicLevel) T = std::max(T, L.two_torsion(a).size());
    const Real scale = to_real(rank_defect(L)) * T / (Real(euler_phi(m)) * Real(L.gamma_m_order(m)));
    Real tail = 0;
    for (u64 s : divisors_of_radical(m)) tail += reciprocal_tail(static_cast<double>(K) / s, r) / s;
    out.tail_bound = scale * tail + abs(sum) * Real("1e-90");
    return out;
}

LemmaCheck lemma_tecn_check(const ExponentLattice& L, u64 n, u64 delta, u64 K) {
    require_rank(L);
    if (n % 2 == 0 || delta % 2 == 0) throw Error(ErrorCode::ParityViolation, "n and delta must be odd");
    if (mobius(delta) == 0) throw Error(ErrorCode::InvalidArgument, "delta must be squarefree");
    LemmaCheck out;
    Real lhs = 0;
    for (u64 k = 1; k <= K; k += 2) {
        const int mu = mobius(k);
        if (mu == 0) continue;
        const u64 nk = checked_mul(n, k);
        if (nk % delta != 0) continue;
        lhs += Real(mu) / (Real(euler_phi(nk)) * Real(L.gamma_m_order(nk)));
    }
    out.lhs_partial = lhs;

    Rational R = a_factor_rational(L, n);
    for (const auto& [ell, e] : factor_u64(delta))
        if (n % ell != 0) R *= local_b_factor(L, BigInt(ell));
    const auto kappa = euler_kappa(static_cast<unsigned>(L.rank()));
    out.rhs = to_real(R) * kappa.kappa_odd;

    // 1/(phi(nk)|Gamma(nk)|) <= B / (phi(n)|Gamma(n)| s phi(k') k'^r) as in the series bound
    const unsigned r = static_cast<unsigned>(L.rank());
    const Real scale = to_real(rank_defect(L)) / (Real(euler_phi(n)) * Real(L.gamma_m_order(n)));
    Real tail = 0;
    for (u64 s : divisors_of_radical(n)) tail += reciprocal_tail(static_cast<double>(K) / s, r) / s;
    out.bound = scale * tail + abs(to_real(R)) * kappa.precision + Real("1e-80");
    return out;
}

}  // namespace indexdensity
