#include "indexdensity/kummer.hpp"

#include "indexdensity/error.hpp"

namespace indexdensity {

namespace {

template <class Pred>
TwistSubgroup filter_torsion(const ExponentLattice& L, u64 n, unsigned alpha, Pred keep) {
    TwistSubgroup out;
    out.n = n;
    out.d = u64{1} << alpha;
    for (auto& e : L.two_torsion_entries(alpha))
        if (e.coset.is_identity() || keep(e)) out.elements.push_back(std::move(e));
    return out;
}

unsigned checked_level(u64 m) {
    const unsigned v = valuation(m, 2);
    if (v > ExponentLattice::kMaxTwoAdicLevel) throw Error(ErrorCode::InvalidArgument, "2-adic level out of range");
    return v;
}

}  // namespace

TwistSubgroup twist_subgroup(const ExponentLattice& L, u64 n, unsigned alpha) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
    if (alpha > 63 || n % (u64{1} << alpha) != 0) {
        throw Error(ErrorCode::ModulusMismatch, "2^alpha does not divide n");
    }
    if (alpha == 0) return filter_torsion(L, n, 0, [](const TorsionEntry&) { return false; });

    const BigInt N(n);
    const bool deeper = valuation(n, 2) > alpha;  // 2^(alpha+1) | n
    return filter_torsion(L, n, alpha, [&](const TorsionEntry& e) {
        const BigInt& delta = e.rep.delta;
        if (e.rep.positive) return divides(delta, N);
        if (deeper) return divides(delta, N);
        return divides(delta, 2 * N) && !divides(delta, N);
    });
}

TwistSubgroup twist_subgroup_quadratic(const ExponentLattice& L, u64 n) {
    if (n % 2 != 0) throw Error(ErrorCode::ModulusMismatch, "n must be even");
    const BigInt N(n);
    return filter_torsion(L, n, 1, [&](const TorsionEntry& e) {
        const BigInt square_class = e.rep.positive ? e.rep.gamma0 : BigInt(-e.rep.gamma0);
        return divides(quadratic_discriminant(square_class), N);
    });
}

TwistSubgroup tilde_gamma(const ExponentLattice& L, u64 m) {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "m must be positive");
    const unsigned v = checked_level(m);
    return filter_torsion(L, m, v, [&](const TorsionEntry& e) {
        const unsigned vd = valuation(e.rep.delta, 2);
        return e.rep.positive ? vd <= v : vd == v + 1;
    });
}

TwistSubgroup tilde_gamma_cases(const ExponentLattice& L, u64 m) {
    if (m == 0) throw Error(ErrorCode::InvalidArgument, "m must be positive");
    const unsigned v = checked_level(m);
    switch (v) {
        case 0:
            return filter_torsion(L, m, 0, [](const TorsionEntry&) { return false; });
        case 1:
            return filter_torsion(L, m, 1, [](const TorsionEntry& e) {
                BigInt r = e.rep.gamma_prime() % 4;
                if (r < 0) r += 4;
                return r == 1;
            });
        case 2:
            return filter_torsion(L, m, 2, [](const TorsionEntry& e) {
                const bool even = e.rep.gamma0 % 2 == 0;
                return e.rep.positive ? !even : even;
            });
        default:
            return filter_torsion(L, m, v, [](const TorsionEntry& e) { return e.rep.positive; });
    }
}

BigInt kummer_degree(const ExponentLattice& L, u64 n, u64 d) {
    if (n == 0 || d == 0 || n % d != 0) throw Error(ErrorCode::DivisibilityViolation, "d must divide n");
    const unsigned alpha = valuation(d, 2);
    const std::size_t twist = alpha == 0 ? 1 : twist_subgroup(L, n, alpha).size();
    return BigInt(euler_phi(n)) * L.gamma_m_order(d) / twist;
}

}  // namespace indexdensity
