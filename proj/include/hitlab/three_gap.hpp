#pragma once

#include <utility>
#include <vector>

#include "hitlab/numeric.hpp"

namespace hitlab {

// Multiset of gap lengths between circularly consecutive points of
// {frac(i * alpha) : 0 <= i < M}: at most three distinct lengths, the
// largest being the sum of the other two. A gap entry (num, mult) denotes
// multiplicity mult of the length num / denom; numerators are kept over the
// shared denominator (denominator of alpha) instead of as reduced
// rationals, so building and consuming the multiset costs no gcd
// normalizations even when denom has thousands of digits. Numerators are
// distinct and positive, multiplicities sum to the number of distinct
// points, and sum(num * mult) == denom (the lengths cover the circle).
struct GapMultiset {
    BigInt denom{1};
    std::vector<std::pair<BigInt, BigInt>> gaps;

    Rational length(std::size_t i) const {
        return Rational(gaps[i].first, denom);
    }
};

// Exact gap structure of the first M orbit points of the rotation by
// alpha, in time polylogarithmic in M and the denominator of alpha (the
// one-sided approximation records of alpha are walked Euclid-style; no
// orbit enumeration). A starting phase shifts all points equally and is
// therefore irrelevant. If the orbit closes before M points (rational
// alpha with short period P <= M-1), the points form a coset of the
// subgroup of order P and all gaps are 1/P.
GapMultiset three_gap(const Rational& alpha, const BigInt& M);

// Lebesgue measure of a union of M open balls of radius r centered at M
// circularly consecutive-gap points: sum over gaps of min(gap, 2r).
Rational union_measure_from_gaps(const GapMultiset& gaps, const Rational& r);

}  // namespace hitlab
