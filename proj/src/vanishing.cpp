#include "indexdensity/vanishing.hpp"

#include <algorithm>

#include "indexdensity/error.hpp"
#include "indexdensity/kummer.hpp"

namespace indexdensity {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

VanishVerdict finish(std::vector<VanishCondition> hits, Finiteness when_hit, Finiteness when_clear) {
    VanishVerdict v;
    v.all_matched = std::move(hits);
    v.vanishes = !v.all_matched.empty();
    v.matched = v.vanishes ? v.all_matched.front() : VanishCondition::None;
    v.finiteness = v.vanishes ? when_hit : when_clear;
    return v;
}

}  // namespace

const char* to_string(VanishCondition c) noexcept {
    switch (c) {
        case VanishCondition::None: return "NONE";
        case VanishCondition::W1: return "W1";
        case VanishCondition::W2: return "W2";
        case VanishCondition::L1: return "L1";
        case VanishCondition::L2: return "L2";
        case VanishCondition::L3: return "L3";
        case VanishCondition::L4: return "L4";
        case VanishCondition::L5: return "L5";
        case VanishCondition::L6: return "L6";
        case VanishCondition::A: return "A";
        case VanishCondition::B: return "B";
        case VanishCondition::C: return "C";
    }
    return "?";
}

const char* to_string(Finiteness f) noexcept {
    switch (f) {
        case Finiteness::Finite: return "Finite";
        case Finiteness::InfiniteOnGRH: return "Infinite-on-GRH";
        case Finiteness::Unknown: return "Unknown";
    }
    return "?";
}

BigInt rational_discriminant(const Rational& x) {
    if (x == 0) throw Error(ErrorCode::InvalidArgument, "disc of 0");
    // the square class of n/d is that of n*d
    const BigInt nd = numerator(x) * denominator(x);
    BigInt core = nd < 0 ? BigInt(-1) : BigInt(1);
    if (abs(nd) != 1)
        for (const auto& [p, e] : factor(nd))
            if (e % 2) core *= p;
    return quadratic_discriminant(core);
}

VanishVerdict classify_minus_one_a(const RankOneDecomposition& dec, u64 m) {
    if (dec.sign < 0) throw Error(ErrorCode::NegativeBase, "a must be positive");
    const u64 h = dec.h;
    const unsigned vm = valuation(m, 2);
    const bool common = h % 3 == 0 && m % 3 != 0 && dec.a1 % 3 == 0 && (BigInt(3) * m) % dec.a1 == 0;
    std::vector<VanishCondition> hits;
    if (common && h % 2 == 1 && vm == 1 && dec.a1 % 2 != 0) hits.push_back(VanishCondition::W1);
    if (common && dec.v2h < vm && vm != 1) hits.push_back(VanishCondition::W2);
    return finish(std::move(hits), Finiteness::Finite, Finiteness::InfiniteOnGRH);
}

VanishVerdict classify_lenstra(const Rational& g, u64 m) {
    const auto dec = decompose(g);
    const u64 h = dec.h;
    const Rational& g0 = dec.a0;
    const unsigned vm = valuation(m, 2), vh = dec.v2h;
    const BigInt M(m);
    auto disc_divides = [](const Rational& x, const BigInt& n) { return divides(rational_discriminant(x), n); };
    const bool pos = dec.sign > 0;
    const bool three = h % 3 == 0 && m % 3 != 0;

    std::vector<VanishCondition> hits;
    if (m % 2 == 1 && disc_divides(g, M)) hits.push_back(VanishCondition::L1);
    if (pos && vm > vh && three && disc_divides(-3 * g0, M)) hits.push_back(VanishCondition::L2);
    if (!pos && h % 2 == 1 && vm == 1 && three && disc_divides(3 * g0, M)) hits.push_back(VanishCondition::L3);
    if (!pos && vh == 1 && vm == 1 && disc_divides(2 * g0, 2 * M)) hits.push_back(VanishCondition::L4);
    if (!pos && vh == 1 && vm == 2 && three && disc_divides(-6 * g0, M)) hits.push_back(VanishCondition::L5);
    if (!pos && vm > 1 + vh && three && disc_divides(-3 * g0, M)) hits.push_back(VanishCondition::L6);
    return finish(std::move(hits), Finiteness::Finite, Finiteness::InfiniteOnGRH);
}

VanishVerdict sufficient_vanishing(const ExponentLattice& L, u64 m) {
    if (L.rank() == 0) throw Error(ErrorCode::RankZero, "rank >= 1 required");
    const BigInt M(m);
    const unsigned vm = valuation(m, 2);
    std::vector<VanishCondition> hits;

    if (m % 2 == 1) {
        bool all = true;
        for (const auto& e : L.two_torsion_entries(1)) {
            const BigInt s = e.rep.positive ? e.rep.gamma0 : BigInt(-e.rep.gamma0);
            if (!divides(quadratic_discriminant(s), M)) {
                all = false;
                break;
            }
        }
        if (all) hits.push_back(VanishCondition::A);
    }
    if (m % 2 == 0 && m % 3 != 0 && L.gamma_m_order(3) == 1) {
        const BigInt six_m = 6 * M;
        for (const auto& e : tilde_gamma(L, m).elements) {
            if (e.rep.delta % 3 == 0 && divides(e.rep.delta, six_m)) {
                hits.push_back(VanishCondition::B);
                break;
            }
        }
    }
    if (vm == 1 && L.gamma_m_order(2) == 2) {
        const auto t = tilde_gamma(L, 2 * m);
        if (BigInt(t.size()) == L.gamma_m_order(4)) {
            const BigInt four_m = 4 * M;
            const bool all = std::all_of(t.elements.begin(), t.elements.end(),
                                         [&](const TorsionEntry& e) { return divides(e.rep.delta, four_m); });
            if (all) hits.push_back(VanishCondition::C);
        }
    }
    return finish(std::move(hits), Finiteness::Finite, m % 2 == 1 ? Finiteness::InfiniteOnGRH : Finiteness::Unknown);
}

bool lenstra_consistency(const Rational& g, u64 m) {
    const auto dec = decompose(g);
    const auto L = ExponentLattice::build(GroupSpec{{g}});
    const auto thm = sufficient_vanishing(L, m);
    const auto len = classify_lenstra(g, m);
    auto has = [](const VanishVerdict& v, VanishCondition c) {
        return std::find(v.all_matched.begin(), v.all_matched.end(), c) != v.all_matched.end();
    };

    const unsigned vm = valuation(m, 2), vh = dec.v2h;
    VanishCondition b_target = VanishCondition::None;
    if (dec.sign > 0) b_target = VanishCondition::L2;
    else if (vm == 1 && vh == 0) b_target = VanishCondition::L3;
    else if (vm == 2 && vh == 1) b_target = VanishCondition::L5;
    else if (vm > vh + 1) b_target = VanishCondition::L6;

    const bool any_b_case = has(len, VanishCondition::L2) || has(len, VanishCondition::L3) ||
                            has(len, VanishCondition::L5) || has(len, VanishCondition::L6);
    const bool b_side = b_target != VanishCondition::None && has(len, b_target);
    return has(thm, VanishCondition::A) == has(len, VanishCondition::L1) &&
           has(thm, VanishCondition::C) == has(len, VanishCondition::L4) &&
           has(thm, VanishCondition::B) == b_side && any_b_case == b_side;
}

std::vector<CensusHit> minus_one_a_census(const std::vector<BigInt>& values, u64 m_max) {
    std::vector<CensusHit> out;
    for (const auto& a : values) {
        if (a <= 1) throw Error(ErrorCode::DegenerateInput, "census needs a > 1");
        const auto dec = decompose(Rational(a));
        for (u64 m = 1; m <= m_max; ++m) {
            const auto v = classify_minus_one_a(dec, m);
            if (!v.vanishes) continue;
            out.push_back({a, m, v.matched});
            break;
        }
    }
    return out;
}

}  // namespace indexdensity
