#include <algorithm>
#include <map>

#include "doctest.h"
#include "hitlab/arc_union.hpp"
#include "hitlab/rng.hpp"
#include "hitlab/three_gap.hpp"

using namespace hitlab;

namespace {

Rational rand_rational(SplitMix64& rng, std::uint64_t max_den) {
    std::uint64_t q = 2 + rng.next_below(max_den - 1);
    std::uint64_t p = rng.next_below(q);
    return Rational(p, q);
}

ArcUnion random_union(SplitMix64& rng, int pieces) {
    ArcUnion u;
    for (int i = 0; i < pieces; ++i)
        u = u.unite(ArcUnion::arc(rand_rational(rng, 50),
                                  rand_rational(rng, 40)));
    return u;
}

// Exact gap multiset by sorting the distinct orbit points.
std::map<Rational, BigInt> brute_gaps(const Rational& alpha, long M) {
    std::vector<Rational> pts;
    Rational p = 0;
    for (long i = 0; i < M; ++i) {
        pts.push_back(p);
        p = frac(p + alpha);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::map<Rational, BigInt> gaps;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Rational next = i + 1 < pts.size() ? pts[i + 1] : pts[0] + 1;
        ++gaps[next - pts[i]];
    }
    return gaps;
}

}  // namespace

TEST_CASE("arc construction, wraparound and measure") {
    auto a = ArcUnion::arc(Rational(9, 10), Rational(1, 5));
    CHECK(a.measure() == Rational(1, 5));
    CHECK(a.arcs().size() == 2);  // split at 0
    CHECK(a.contains(Rational(19, 20)));
    CHECK(a.contains(Rational(1, 20)));
    CHECK(!a.contains(Rational(1, 2)));

    auto b = ArcUnion::ball(Rational(0), Rational(1, 4));
    CHECK(b.measure() == Rational(1, 2));
    CHECK(b.contains(Rational(0)));
    CHECK(b.contains(Rational(9, 10)));
    CHECK(!b.contains(Rational(1, 4)));  // half-open right end

    CHECK(ArcUnion::full().measure() == 1);
    CHECK(ArcUnion::arc(Rational(1, 3), Rational(0)).empty());
    CHECK_THROWS_AS(ArcUnion::ball(Rational(0), Rational(1, 2)), ConfigError);
}

TEST_CASE("set operations match pointwise membership") {
    SplitMix64 rng(314);
    for (int it = 0; it < 40; ++it) {
        auto A = random_union(rng, 3);
        auto B = random_union(rng, 3);
        auto U = A.unite(B);
        auto S = A.subtract(B);
        auto I = A.intersect(B);
        for (int s = 0; s < 120; ++s) {
            Rational x = rand_rational(rng, 997);
            bool ina = A.contains(x), inb = B.contains(x);
            CHECK(U.contains(x) == (ina || inb));
            CHECK(S.contains(x) == (ina && !inb));
            CHECK(I.contains(x) == (ina && inb));
        }
        // inclusion-exclusion, exactly
        CHECK(U.measure() + I.measure() == A.measure() + B.measure());
        // disjoint decomposition
        CHECK(S.measure() + I.measure() == A.measure());
    }
}

TEST_CASE("shift is a measure-preserving bijection") {
    SplitMix64 rng(2718);
    for (int it = 0; it < 30; ++it) {
        auto A = random_union(rng, 4);
        Rational t = rand_rational(rng, 60);
        auto S = A.shift(t);
        CHECK(S.measure() == A.measure());
        auto back = S.shift(-t);
        for (int s = 0; s < 60; ++s) {
            Rational x = rand_rational(rng, 499);
            CHECK(S.contains(frac(x + t)) == A.contains(x));
            CHECK(back.contains(x) == A.contains(x));
        }
    }
}

TEST_CASE("three_gap matches brute force on random instances") {
    SplitMix64 rng(161803);
    for (int it = 0; it < 400; ++it) {
        std::uint64_t q = 2 + rng.next_below(400);
        std::uint64_t p = rng.next_below(q);
        Rational alpha(p, q);
        long M = 1 + static_cast<long>(rng.next_below(300));
        auto fast = three_gap(alpha, BigInt(M));
        auto slow = brute_gaps(alpha, M);
        CHECK(fast.gaps.size() == slow.size());
        CHECK(fast.gaps.size() <= 3);
        for (std::size_t g = 0; g < fast.gaps.size(); ++g) {
            auto it2 = slow.find(fast.length(g));
            REQUIRE(it2 != slow.end());
            CHECK(it2->second == fast.gaps[g].second);
        }
    }
}

TEST_CASE("three_gap handles degenerate and closed orbits") {
    auto g0 = three_gap(Rational(0), BigInt(50));
    REQUIRE(g0.gaps.size() == 1);
    CHECK(g0.length(0) == 1);

    auto g1 = three_gap(Rational(3, 7), BigInt(100));  // closes after 7
    REQUIRE(g1.gaps.size() == 1);
    CHECK(g1.length(0) == Rational(1, 7));
    CHECK(g1.gaps[0].second == 7);
}

TEST_CASE("union measure from gaps equals direct arc union") {
    SplitMix64 rng(5551);
    for (int it = 0; it < 60; ++it) {
        std::uint64_t q = 3 + rng.next_below(300);
        std::uint64_t p = 1 + rng.next_below(q - 1);
        Rational alpha(p, q);
        long M = 1 + static_cast<long>(rng.next_below(80));
        Rational r(1, 5 + rng.next_below(200));
        Rational x0 = rand_rational(rng, 40);

        ArcUnion direct;
        Rational c = x0;
        for (long i = 0; i < M; ++i) {
            direct = direct.unite(ArcUnion::ball(c, r));
            c = frac(c + alpha);
        }
        CHECK(union_measure_from_gaps(three_gap(alpha, BigInt(M)), r) ==
              direct.measure());
    }
}
