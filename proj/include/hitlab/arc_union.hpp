#pragma once

#include <utility>
#include <vector>

#include "hitlab/numeric.hpp"

namespace hitlab {

// Finite union of half-open arcs [l, r) on the circle [0,1), kept sorted,
// disjoint and split at 0 (a wraparound arc is stored as two pieces). All
// endpoints and the cached total measure are exact rationals; set
// operations are exact, so measure statements become zero-tolerance tests.
class ArcUnion {
  public:
    ArcUnion() = default;

    // [l, l+len) reduced mod 1; len in [0, 1], len = 1 is the full circle.
    static ArcUnion arc(const Rational& l, const Rational& len);
    // Open ball B(center, radius) as the arc [center-radius, center+radius);
    // the half-open convention changes the set only on a null set and no
    // measure. Requires radius < 1/2.
    static ArcUnion ball(const Rational& center, const Rational& radius);
    static ArcUnion full();
    // Union of equal-radius balls in one pass (sorting once instead of
    // re-normalizing per ball).
    static ArcUnion union_of_balls(const std::vector<Rational>& centers,
                                   const Rational& radius);

    ArcUnion unite(const ArcUnion& o) const;
    ArcUnion subtract(const ArcUnion& o) const;
    ArcUnion intersect(const ArcUnion& o) const;
    // The set shifted by t (mod 1); rotation preimage of A is A - t.
    ArcUnion shift(const Rational& t) const;

    bool contains(const Rational& x) const;
    bool empty() const { return arcs_.empty(); }
    const Rational& measure() const { return measure_; }
    const std::vector<std::pair<Rational, Rational>>& arcs() const {
        return arcs_;
    }

  private:
    std::vector<std::pair<Rational, Rational>> arcs_;  // 0 <= l < r <= 1
    Rational measure_{0};

    static ArcUnion from_pieces(std::vector<std::pair<Rational, Rational>> ps);
};

}  // namespace hitlab
