#include <set>

#include "doctest.h"
#include "hitlab/orbit.hpp"
#include "hitlab/rng.hpp"

using namespace hitlab;

namespace {

// Naive exact iteration oracle for the circle.
std::optional<BigInt> brute_hit_circle(const Rational& alpha, const Rational& x,
                                       const Rational& x0, const Rational& r,
                                       long horizon) {
    Rational p = x;
    for (long n = 1; n <= horizon; ++n) {
        p = frac(p + alpha);
        if (circle_dist(p, x0) < r) return BigInt(n);
    }
    return std::nullopt;
}

std::vector<BigInt> brute_entries(const Rational& alpha, const Rational& x,
                                  const Rational& x0, const Rational& r,
                                  std::size_t count, long horizon) {
    std::vector<BigInt> out;
    Rational p = x;
    for (long n = 1; n <= horizon && out.size() < count; ++n) {
        p = frac(p + alpha);
        if (circle_dist(p, x0) < r) out.emplace_back(n);
    }
    return out;
}

std::optional<BigInt> brute_hit_torus2(const Rational& a1, const Rational& a2,
                                       const TorusPoint& x,
                                       const TorusPoint& x0, const Rational& r,
                                       long horizon) {
    Rational p1 = x.c[0], p2 = x.c[1];
    for (long n = 1; n <= horizon; ++n) {
        p1 = frac(p1 + a1);
        p2 = frac(p2 + a2);
        if (circle_dist(p1, x0.c[0]) < r && circle_dist(p2, x0.c[1]) < r)
            return BigInt(n);
    }
    return std::nullopt;
}

Rational rand_rational(SplitMix64& rng, std::uint64_t max_den) {
    std::uint64_t q = 2 + rng.next_below(max_den - 1);
    std::uint64_t p = rng.next_below(q);
    return Rational(p, q);
}

}  // namespace

TEST_CASE("hit_circle hand examples") {
    // quarter rotation: 2 * (1/4) = 1/2
    auto rec = hit_circle(Rational(1, 4), CirclePoint(Rational(0)),
                          CirclePoint(Rational(1, 2)), Rational(1, 10),
                          BigInt(100));
    REQUIRE(rec.found());
    CHECK(*rec.tau == 2);

    // near-full ball: first step already inside
    auto rec2 = hit_circle(Rational(1, 4), CirclePoint(Rational(0)),
                           CirclePoint(Rational(1, 2)), Rational(49, 100),
                           BigInt(100));
    REQUIRE(rec2.found());
    CHECK(*rec2.tau == 1);

    // degenerate balls rejected
    CHECK_THROWS_AS(hit_circle(Rational(1, 4), CirclePoint(Rational(0)),
                               CirclePoint(Rational(1, 2)), Rational(1, 2),
                               BigInt(10)),
                    ConfigError);
}

TEST_CASE("hit_circle golden truncation matches brute force") {
    auto cf = golden_cf(10);
    Rational a = frac(value(cf));
    auto rec = hit_circle(cf, CirclePoint(Rational(0)),
                          CirclePoint(Rational(1, 2)), Rational(1, 20),
                          BigInt(24));
    auto oracle = brute_hit_circle(a, 0, Rational(1, 2), Rational(1, 20), 24);
    REQUIRE(rec.found());
    REQUIRE(oracle.has_value());
    CHECK(*rec.tau == *oracle);

    // horizon invariant enforced on truncations
    CHECK_THROWS_AS(hit_circle(cf, CirclePoint(Rational(0)),
                               CirclePoint(Rational(1, 2)), Rational(1, 20),
                               BigInt(1000000)),
                    HorizonError);
}

TEST_CASE("next_entries hand example and oracle") {
    auto es = next_entries(Rational(1, 4), CirclePoint(Rational(0)),
                           CirclePoint(Rational(1, 2)), Rational(1, 10), 3,
                           BigInt(100));
    REQUIRE(es.size() == 3);
    CHECK(es[0] == 2);
    CHECK(es[1] == 6);
    CHECK(es[2] == 10);

    CHECK(next_entries(Rational(1, 4), CirclePoint(Rational(0)),
                       CirclePoint(Rational(1, 2)), Rational(1, 10), 0,
                       BigInt(100))
              .empty());

    auto cf = golden_cf(20);
    Rational a = frac(value(cf));
    auto fast = next_entries(cf, CirclePoint(Rational(1, 7)),
                             CirclePoint(Rational(0)), Rational(1, 30), 10,
                             BigInt(10000));
    auto slow =
        brute_entries(a, Rational(1, 7), Rational(0), Rational(1, 30), 10, 10000);
    CHECK(fast == slow);
}

TEST_CASE("oracle equivalence on random circle instances") {
    SplitMix64 rng(777);
    for (int it = 0; it < 200; ++it) {
        Rational alpha = rand_rational(rng, 400);
        Rational x = rand_rational(rng, 60);
        Rational x0 = rand_rational(rng, 60);
        Rational r(1, 3 + rng.next_below(48));
        long horizon = 1 + static_cast<long>(rng.next_below(2000));

        auto rec = hit_circle(alpha, CirclePoint(x), CirclePoint(x0), r,
                              BigInt(horizon));
        auto oracle = brute_hit_circle(alpha, x, x0, r, horizon);
        REQUIRE(rec.found() == oracle.has_value());
        if (rec.found()) CHECK(*rec.tau == *oracle);

        auto fast = next_entries(alpha, CirclePoint(x), CirclePoint(x0), r, 40,
                                 BigInt(horizon));
        auto slow = brute_entries(alpha, x, x0, r, 40, horizon);
        CHECK(fast == slow);

        // three-gap property of the entry times
        std::set<BigInt> gaps;
        for (std::size_t i = 1; i < fast.size(); ++i)
            gaps.insert(fast[i] - fast[i - 1]);
        CHECK(gaps.size() <= 3);
    }
}

TEST_CASE("monotonicity and shift equivariance") {
    SplitMix64 rng(4242);
    for (int it = 0; it < 50; ++it) {
        Rational alpha = rand_rational(rng, 300);
        Rational x = rand_rational(rng, 40);
        Rational x0 = rand_rational(rng, 40);
        long horizon = 3000;
        Rational r1(1, 40), r2(1, 9);  // r1 < r2
        auto small = hit_circle(alpha, CirclePoint(x), CirclePoint(x0), r1,
                                BigInt(horizon));
        auto big = hit_circle(alpha, CirclePoint(x), CirclePoint(x0), r2,
                              BigInt(horizon));
        if (small.found()) {
            REQUIRE(big.found());
            CHECK(*big.tau <= *small.tau);
        }
        // conjugating by a rotation changes nothing
        Rational off = rand_rational(rng, 30);
        auto shifted = hit_circle(alpha, CirclePoint(x + off),
                                  CirclePoint(x0 + off), r1, BigInt(horizon));
        REQUIRE(shifted.found() == small.found());
        if (small.found()) CHECK(*shifted.tau == *small.tau);
    }
}

TEST_CASE("hit_torus2 hand examples") {
    // parity clash: n = 2 mod 4 is even, n = 3 mod 6 is odd -> never both
    TorusPoint x({Rational(0), Rational(0)});
    TorusPoint x0a({Rational(1, 2), Rational(1, 2)});
    auto rec = hit_torus2(Rational(1, 4), Rational(1, 6), x, x0a,
                          Rational(1, 10), BigInt(1000));
    CHECK(!rec.found());

    TorusPoint x0b({Rational(1, 2), Rational(1, 3)});
    auto rec2 = hit_torus2(Rational(1, 4), Rational(1, 6), x, x0b,
                           Rational(1, 10), BigInt(1000));
    REQUIRE(rec2.found());
    CHECK(*rec2.tau == 2);
}

TEST_CASE("hit_torus2 oracle equivalence on random instances") {
    SplitMix64 rng(90210);
    for (int it = 0; it < 120; ++it) {
        Rational a1 = rand_rational(rng, 200);
        Rational a2 = rand_rational(rng, 200);
        TorusPoint x({rand_rational(rng, 30), rand_rational(rng, 30)});
        TorusPoint x0({rand_rational(rng, 30), rand_rational(rng, 30)});
        Rational r(1, 3 + rng.next_below(20));
        long horizon = 1 + static_cast<long>(rng.next_below(3000));

        auto rec = hit_torus2(a1, a2, x, x0, r, BigInt(horizon));
        auto oracle = brute_hit_torus2(a1, a2, x, x0, r, horizon);
        REQUIRE(rec.found() == oracle.has_value());
        if (rec.found()) CHECK(*rec.tau == *oracle);
    }
}

TEST_CASE("recurrence_time") {
    auto rec = recurrence_time(Rational(1, 4), CirclePoint(Rational(1, 3)),
                               Rational(1, 10), BigInt(100));
    REQUIRE(rec.found());
    CHECK(*rec.tau == 4);

    // r >= ||alpha||: first step is already a return
    auto rec1 = recurrence_time(Rational(1, 4), CirclePoint(Rational(0)),
                                Rational(3, 10), BigInt(100));
    REQUIRE(rec1.found());
    CHECK(*rec1.tau == 1);

    // golden truncation: returns happen at denominators q_n
    auto cf = golden_cf(12);
    auto rec2 = recurrence_time(cf, CirclePoint(Rational(2, 7)),
                                Rational(1, 50), BigInt(60));
    auto oracle = brute_hit_circle(frac(value(cf)), Rational(2, 7),
                                   Rational(2, 7), Rational(1, 50), 60);
    REQUIRE(rec2.found());
    REQUIRE(oracle.has_value());
    CHECK(*rec2.tau == *oracle);
    CHECK(*rec2.tau == 34);  // q_9 of the all-ones fraction
}

TEST_CASE("d_n_sequence basics and hitting identity") {
    auto ds = d_n_sequence(Rational(1, 4), CirclePoint(Rational(0)),
                           CirclePoint(Rational(1, 2)), 6);
    CHECK(ds[0] == Rational(1, 4));
    for (int n = 1; n < 6; ++n) CHECK(ds[n] == 0);

    // d_n <= r  iff  tau_r <= n
    SplitMix64 rng(11);
    for (int it = 0; it < 40; ++it) {
        Rational alpha = rand_rational(rng, 200);
        Rational x = rand_rational(rng, 25);
        Rational x0 = rand_rational(rng, 25);
        long n_max = 200;
        auto seq = d_n_sequence(alpha, CirclePoint(x), CirclePoint(x0), n_max);
        Rational r(1, 5 + rng.next_below(30));
        auto rec =
            hit_circle(alpha, CirclePoint(x), CirclePoint(x0), r, BigInt(n_max));
        for (long n : {1L, 7L, 50L, 200L}) {
            bool d_small = seq[static_cast<std::size_t>(n - 1)] < r;
            bool tau_leq = rec.found() && *rec.tau <= n;
            CHECK(d_small == tau_leq);
        }
    }
}

TEST_CASE("d_n_sequence drops at best-approximation denominators") {
    auto cf = golden_cf(20);
    auto ds = d_n_sequence(cf, CirclePoint(Rational(1, 3)),
                           CirclePoint(Rational(1, 3)), 60);
    // staircase: d_n constant between Fibonacci indices, strictly smaller at
    // each q_k, with value ||q_k alpha||
    long fibs[] = {2, 3, 5, 8, 13, 21, 34, 55};
    auto cs = convergents(cf, cf.depth());
    Rational prev = ds[0];
    for (long q : fibs) {
        std::size_t k = 0;
        while (cs[k].q != q) ++k;
        Rational at = ds[static_cast<std::size_t>(q - 1)];
        CHECK(at < prev);
        CHECK(at == norm_q_alpha(cf, k));
        prev = at;
    }

    auto ds2 = d_n_sequence_torus2(Rational(1, 4), Rational(1, 6),
                                   TorusPoint({Rational(0), Rational(0)}),
                                   TorusPoint({Rational(1, 2), Rational(1, 3)}),
                                   12);
    CHECK(ds2[1] == 0);  // joint hit at n = 2
    CHECK(ds2[0] == Rational(1, 4));
}
