#include "hitlab/three_gap.hpp"

#include <algorithm>
#include <stdexcept>

namespace hitlab {

GapMultiset three_gap(const Rational& alpha, const BigInt& M) {
    if (M < 1) throw ConfigError("three_gap: need M >= 1");
    // reduce alpha mod 1 in integers; Rational is canonical (D > 0, coprime)
    const BigInt D = denominator(alpha);
    BigInt A = numerator(alpha) % D;
    if (A < 0) A += D;

    if (A == 0 || M == 1)  // a single distinct point; one full-circle gap
        return {BigInt(1), {{BigInt(1), BigInt(1)}}};
    if (M >= D + 1)  // orbit closed: coset of the order-D subgroup
        return {D, {{BigInt(1), D}}};

    // One-sided approximation records of A/D up to index M-1, walked
    // subtractively: (ib, vb) is the index/value of the current minimal
    // {i a} (approach from above 0), (ia, wa) of the current minimal
    // 1 - {i a}. New records appear only at index ib + ia.
    BigInt ib = 1, vb = A;      // {ib a} = vb / D
    BigInt ia = 1, wa = D - A;  // 1 - {ia a} = wa / D
    const BigInt limit = M - 1;
    while (ib + ia <= limit) {
        if (vb > wa) {
            BigInt j = std::min(BigInt((vb - 1) / wa),
                                BigInt((limit - ib) / ia));
            ib += j * ia;
            vb -= j * wa;
        } else {
            BigInt j = std::min(BigInt((wa - 1) / vb),
                                BigInt((limit - ia) / ib));
            ia += j * ib;
            wa -= j * vb;
        }
    }

    BigInt m1 = M - ib, m2 = M - ia, m3 = ib + ia - M;
    if (m3 < 0)
        throw std::logic_error("three_gap: negative sum-gap multiplicity");
    GapMultiset out;
    out.denom = D;
    auto add = [&](const BigInt& num, const BigInt& mult) {
        if (mult == 0) return;
        for (auto& g : out.gaps)
            if (g.first == num) {
                g.second += mult;
                return;
            }
        out.gaps.emplace_back(num, mult);
    };
    add(vb, m1);
    add(wa, m2);
    add(vb + wa, m3);

    BigInt total = 0, count = 0;
    for (const auto& g : out.gaps) {
        total += g.first * g.second;
        count += g.second;
    }
    if (total != D || count != M)
        throw std::logic_error("three_gap: gap multiset inconsistent");
    return out;
}

Rational union_measure_from_gaps(const GapMultiset& gaps, const Rational& r) {
    // sum min(num/denom, 2r) * mult over the common denominator denom * q,
    // one rational normalization at the end
    const BigInt p2 = 2 * numerator(r);  // 2r = p2 / q
    const BigInt q = denominator(r);
    const BigInt cap = p2 * gaps.denom;  // 2r over denominator denom * q
    BigInt s = 0;
    for (const auto& g : gaps.gaps)
        s += std::min(BigInt(g.first * q), cap) * g.second;
    return Rational(s, gaps.denom * q);
}

}  // namespace hitlab
