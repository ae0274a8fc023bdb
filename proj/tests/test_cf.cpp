#include "doctest.h"
#include "hitlab/cf.hpp"
#include "hitlab/rng.hpp"

using namespace hitlab;

TEST_CASE("convergent recurrence: all-ones gives Fibonacci denominators") {
    auto cf = golden_cf(5);
    auto cs = convergents(cf, 5);
    long expect_q[] = {1, 1, 2, 3, 5, 8};
    for (int k = 0; k <= 5; ++k) CHECK(cs[k].q == expect_q[k]);
}

TEST_CASE("single quotient and a nontrivial hand computation") {
    auto one = make_cf(0, {7});
    auto cs = convergents(one, 1);
    CHECK(cs[1].p == 1);
    CHECK(cs[1].q == 7);

    auto sqrt2ish = make_cf(1, {2, 2, 2});
    auto cs2 = convergents(sqrt2ish, 3);
    long expect_q[] = {1, 2, 5, 12};
    for (int k = 0; k <= 3; ++k) CHECK(cs2[k].q == expect_q[k]);
    CHECK(value(sqrt2ish) == Rational(17, 12));
}

TEST_CASE("value") {
    CHECK(value(make_cf(0, {2})) == Rational(1, 2));
    CHECK(value(golden_cf(5)) == Rational(5, 8));
    CHECK(value(golden_cf(6)) == Rational(8, 13));
}

TEST_CASE("norm_q_alpha hand value") {
    auto cf = golden_cf(7);  // value 21/34? depth 7: q7=21, p7=13 -> 13/21
    CHECK(value(cf) == Rational(13, 21));
    CHECK(norm_q_alpha(cf, 2) == Rational(5, 21));
    // n = 0 under the p_0 = 0 convention: |q_0 frac - p_0| = frac itself.
    // For frac < 1/2 this coincides with the distance to the nearest integer.
    auto small = make_cf(0, {3, 1, 4, 1, 5});
    CHECK(norm_q_alpha(small, 0) == dist_to_int(value(small)));
    CHECK(norm_q_alpha(cf, 0) == frac(value(cf)));  // 13/21 > 1/2 edge
    CHECK_THROWS_AS(norm_q_alpha(cf, 6), DepthError);
}

TEST_CASE("convergent bound chain on [0;3,1,4,1,5,9,2,6]") {
    auto cf = make_cf(0, {3, 1, 4, 1, 5, 9, 2, 6});
    auto cs = convergents(cf, cf.depth());
    for (std::size_t n = 0; n <= 4; ++n) {
        Rational norm = norm_q_alpha(cf, n);
        Rational lower_half(1, 2 * cs[n + 1].q);
        Rational lower(1, cs[n].q + cs[n + 1].q);
        Rational upper(1, cs[n + 1].q);
        CHECK(lower_half < lower);
        CHECK(lower < norm);
        CHECK(norm < upper);
    }
}

TEST_CASE("alternating sides and coprimality on random fractions") {
    SplitMix64 rng(2024);
    for (int it = 0; it < 50; ++it) {
        ContinuedFraction cf;
        cf.a0 = 0;
        int depth = 5 + static_cast<int>(rng.next_below(10));
        for (int k = 0; k < depth; ++k)
            cf.quotients.emplace_back(1 + rng.next_below(10));
        auto cs = convergents(cf, cf.depth());
        Rational v = frac(value(cf));
        int last_sign = 0;
        for (std::size_t n = 0; n + 2 <= cf.depth(); ++n) {
            CHECK(gcd(cs[n].p, cs[n].q) == 1);
            Rational diff = Rational(cs[n].q) * v - Rational(cs[n].p);
            int sign = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
            if (last_sign != 0) CHECK(sign == -last_sign);
            last_sign = sign;
        }
        // q strictly increasing from index 1
        for (std::size_t n = 2; n <= cf.depth(); ++n) CHECK(cs[n].q > cs[n - 1].q);
    }
}

TEST_CASE("type_estimate") {
    CHECK(type_estimate(golden_cf(20)) == doctest::Approx(1.0).epsilon(0.15));
    auto fast = make_cf(0, {2, 4, 16, 256});
    CHECK(type_estimate(fast) >= 1.8);
    auto constant = make_cf(0, {3, 3, 3, 3, 3, 3});
    CHECK(type_estimate(constant) >= 1.0);
}

TEST_CASE("fibonacci lower bound q_n >= f_n") {
    SplitMix64 rng(5);
    for (int it = 0; it < 30; ++it) {
        ContinuedFraction cf;
        cf.a0 = 0;
        for (int k = 0; k < 15; ++k) cf.quotients.emplace_back(1 + rng.next_below(9));
        auto cs = convergents(cf, cf.depth());
        BigInt a = 1, b = 1;  // Fibonacci, aligned with the all-ones fraction
        for (std::size_t n = 1; n <= cf.depth(); ++n) {
            CHECK(cs[n].q >= a);
            BigInt next = a + b;
            b = a;
            a = next;
        }
    }
}

TEST_CASE("horizon invariant check") {
    auto cf = golden_cf(10);  // q10 = 89, q9 = 55
    CHECK_NOTHROW(check_horizon(cf, 10, Rational(1, 20)));
    CHECK_THROWS_AS(check_horizon(cf, 1000000, Rational(1, 20)), HorizonError);
}

TEST_CASE("cf_from_rational round-trips") {
    auto cf = cf_from_rational(Rational(13, 21));
    CHECK(value(cf) == Rational(13, 21));
    auto cf2 = cf_from_rational(Rational(1, 4));
    CHECK(value(cf2) == Rational(1, 4));
}
