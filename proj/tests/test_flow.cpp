#include <cmath>

#include "doctest.h"
#include "hitlab/flow.hpp"
#include "hitlab/orbit.hpp"
#include "hitlab/rng.hpp"

using namespace hitlab;

namespace {

// speed 1 + 0.5 cos(2 pi x_1) on T^2 or T^3
Reparametrization cos_speed(std::size_t dim) {
    std::vector<int> freq(dim, 0);
    freq[0] = 1;
    return Reparametrization(1.0, {TrigTerm{freq, 0.5, 0.0}});
}

// dyadic double in (0, 1) with 20 fractional bits: sums of a few of these
// stay exact in double arithmetic
double dyadic(SplitMix64& rng) {
    return static_cast<double>(rng.next_below((1u << 20) - 2) + 1) /
           static_cast<double>(1u << 20);
}

}  // namespace

TEST_CASE("speed positivity and range are certified from coefficients") {
    auto phi = cos_speed(2);
    CHECK(phi.min_lower() == doctest::Approx(0.5));
    CHECK(phi.max_upper() == doctest::Approx(1.5));
    CHECK(phi.certified_C() == doctest::Approx(2.0));
    CHECK(phi.certified_C() <= 3.0);
    CHECK(phi({0.0, 0.3}) == doctest::Approx(1.5));
    CHECK(phi({0.5, 0.3}) == doctest::Approx(0.5));
    CHECK(phi({0.25, 0.9}) == doctest::Approx(1.0));

    auto twice = phi.scaled(2.0);
    CHECK(twice({0.1, 0.2}) == doctest::Approx(2.0 * phi({0.1, 0.2})));

    CHECK_THROWS_AS(Reparametrization(1.0, {TrigTerm{{1, 0}, 1.0, 0.5}}),
                    ConfigError);
    CHECK_THROWS_AS(Reparametrization(-1.0, {}), ConfigError);
}

TEST_CASE("diagonal flow reaches the centered ball at t = 0.4") {
    TranslationFlow flow{{1.0, 1.0}};
    auto t = flow_hit(flow, {0.0, 0.0}, {0.5, 0.5}, 0.1, 10.0);
    REQUIRE(t.has_value());
    CHECK(*t == doctest::Approx(0.4).epsilon(1e-12));

    // starting inside the ball: the infimum is 0
    auto t0 = flow_hit(flow, {0.45, 0.52}, {0.5, 0.5}, 0.1, 10.0);
    REQUIRE(t0.has_value());
    CHECK(*t0 == 0.0);
}

TEST_CASE("frozen coordinates: never-hits error or inert constraint") {
    TranslationFlow flow{{1.0, 0.0}};
    CHECK_THROWS_AS(flow_hit(flow, {0.0, 0.0}, {0.5, 0.5}, 0.1, 10.0),
                    ConfigError);

    // second coordinate frozen but already within radius: 1-d problem
    auto t = flow_hit(flow, {0.0, 0.45}, {0.5, 0.5}, 0.1, 10.0);
    REQUIRE(t.has_value());
    CHECK(*t == doctest::Approx(0.4).epsilon(1e-12));

    // both frozen, inside: t = 0
    TranslationFlow still{{0.0, 0.0}};
    auto z = flow_hit(still, {0.49, 0.51}, {0.5, 0.5}, 0.1, 1.0);
    REQUIRE(z.has_value());
    CHECK(*z == 0.0);
}

TEST_CASE("no entry before t_max is reported as censored") {
    TranslationFlow flow{{1.0, 0.7071067811865476}};
    auto t = flow_hit(flow, {0.0, 0.0}, {0.5, 0.26}, 0.02, 0.3);
    CHECK(!t.has_value());
    // the same query with room succeeds
    auto t2 = flow_hit(flow, {0.0, 0.0}, {0.5, 0.26}, 0.02, 10000.0);
    CHECK(t2.has_value());

    // rationally dependent direction: the orbit is periodic and can miss
    // the target forever
    TranslationFlow dep{{1.0, 0.5}};
    auto never = flow_hit(dep, {0.0, 0.0}, {0.5, 0.26}, 0.005, 10000.0);
    CHECK(!never.has_value());
}

TEST_CASE("3-d sweep agrees with a dense time-sampling oracle") {
    SplitMix64 rng(101);
    for (int inst = 0; inst < 10; ++inst) {
        TranslationFlow flow{
            {1.0, 0.3 + 0.6 * rng.next_double(), 0.3 + 0.6 * rng.next_double()}};
        std::vector<double> x{rng.next_double(), rng.next_double(),
                              rng.next_double()};
        std::vector<double> x0{rng.next_double(), rng.next_double(),
                               rng.next_double()};
        const double r = 0.06, t_max = 400.0;
        auto t = flow_hit(flow, x, x0, r, t_max);
        REQUIRE(t.has_value());

        // oracle: first sample of a dense grid inside the ball
        const double step = r / 40.0;
        double t_oracle = -1.0;
        for (double s = 0.0; s <= t_max; s += step) {
            std::vector<double> p(3);
            for (int i = 0; i < 3; ++i)
                p[i] = wrap_unit(x[i] + s * flow.direction[i]);
            if (sup_dist_d(p, x0) < r) {
                t_oracle = s;
                break;
            }
        }
        REQUIRE(t_oracle >= 0.0);
        // the sweep result is an infimum: never later than the oracle
        // witness, and the oracle finds a point within one grid step plus
        // the entry tangency
        CHECK(*t <= t_oracle + 1e-9);
        CHECK(t_oracle - *t <= 2.0 * step);
        // at the infimum the orbit sits exactly on the ball boundary
        if (*t > 0.0) {
            std::vector<double> p(3);
            for (int i = 0; i < 3; ++i)
                p[i] = wrap_unit(x[i] + *t * flow.direction[i]);
            CHECK(sup_dist_d(p, x0) == doctest::Approx(r).epsilon(1e-9));
        }
    }
}

TEST_CASE("constant speeds are exact time changes of the sweep") {
    SplitMix64 rng(11);
    for (int inst = 0; inst < 50; ++inst) {
        TranslationFlow flow{{1.0, rng.next_double()}};
        std::vector<double> x{rng.next_double(), rng.next_double()};
        std::vector<double> x0{rng.next_double(), rng.next_double()};
        auto t = flow_hit(flow, x, x0, 0.05, 500.0);
        auto one = reparam_flow_hit(flow, Reparametrization(), x, x0, 0.05,
                                    500.0);
        auto two = reparam_flow_hit(flow, Reparametrization(2.0, {}), x, x0,
                                    0.05, 500.0);
        REQUIRE(t.has_value());
        REQUIRE(one.has_value());
        REQUIRE(two.has_value());
        CHECK(*one == *t);
        CHECK(*two == doctest::Approx(*t / 2.0).epsilon(1e-15));
    }
}

TEST_CASE("reparametrized hitting times sit in the [tau/C, C tau] sandwich") {
    auto phi = cos_speed(2);
    const double C = 3.0;  // any certified bound works; 3 >= certified_C()
    SplitMix64 rng(5);
    int checked = 0;
    for (int inst = 0; inst < 50; ++inst) {
        TranslationFlow flow{{1.0, rng.next_double()}};
        std::vector<double> x{rng.next_double(), rng.next_double()};
        std::vector<double> x0{rng.next_double(), rng.next_double()};
        const double r = 0.1;
        auto t = flow_hit(flow, x, x0, r, 500.0);
        REQUIRE(t.has_value());
        auto tr = reparam_flow_hit(flow, phi, x, x0, r, C * *t + 1.0);
        REQUIRE(tr.has_value());
        CHECK(*tr >= *t / C - 1e-6);
        CHECK(*tr <= C * *t + 1e-6);
        ++checked;
    }
    CHECK(checked == 50);

    // doubling the speed halves the reparametrized hitting time
    TranslationFlow flow{{1.0, 0.6180339887498949}};
    std::vector<double> x{0.2, 0.7}, x0{0.9, 0.1};
    auto a = reparam_flow_hit(flow, phi, x, x0, 0.08, 200.0);
    auto b = reparam_flow_hit(flow, phi.scaled(2.0), x, x0, 0.08, 200.0);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*b == doctest::Approx(*a / 2.0).epsilon(1e-5));
}

TEST_CASE("time-1 map of constant speeds is the exact torus translation") {
    SplitMix64 rng(23);
    for (int inst = 0; inst < 20; ++inst) {
        const double a1 = dyadic(rng), a2 = dyadic(rng);
        TranslationFlow flow{{a1, a2}};
        const std::vector<double> x{dyadic(rng), dyadic(rng)};
        auto y = time1_map(flow, Reparametrization(), x);
        // the same translation in exact rationals (all values dyadic, so
        // the double arithmetic is itself exact and the results agree
        // bit for bit)
        const long D = 1L << 20;
        auto exact = [&](double xi, double ai) {
            Rational s = frac(Rational(std::lround(xi * D), D) +
                              Rational(std::lround(ai * D), D));
            return numerator(s).convert_to<double>() /
                   denominator(s).convert_to<double>();
        };
        CHECK(y[0] == exact(x[0], a1));
        CHECK(y[1] == exact(x[1], a2));

        // speed 2: translation by twice the direction
        auto y2 = time1_map(flow, Reparametrization(2.0, {}), x);
        CHECK(y2[0] == exact(exact(x[0], a1), a1));
        CHECK(y2[1] == exact(exact(x[1], a2), a2));
    }
}

TEST_CASE("discrete time-1 hitting times dominate the continuous ones") {
    auto phi = cos_speed(2);
    SplitMix64 rng(31);
    for (int inst = 0; inst < 10; ++inst) {
        TranslationFlow flow{{1.0, rng.next_double()}};
        std::vector<double> x{rng.next_double(), rng.next_double()};
        std::vector<double> x0{rng.next_double(), rng.next_double()};
        const double r = 0.12;
        auto tc = reparam_flow_hit(flow, phi, x, x0, r, 500.0);
        REQUIRE(tc.has_value());
        auto nd = discrete_hit(flow, phi, x, x0, r, 2000);
        REQUIRE(nd.has_value());
        CHECK(static_cast<double>(*nd) >= *tc - 1e-6);

        // unreparametrized variant; direction with an irrational first
        // component, else the time-1 map freezes that coordinate
        TranslationFlow gen{{0.3 + 0.6 * rng.next_double(), rng.next_double()}};
        auto tf = flow_hit(gen, x, x0, r, 500.0);
        auto nf = discrete_hit(gen, Reparametrization(), x, x0, r, 5000);
        REQUIRE(tf.has_value());
        REQUIRE(nf.has_value());
        CHECK(static_cast<double>(*nf) >= *tf - 1e-9);
    }
}

TEST_CASE("unreparametrized section map is the exact translation with "
          "return time 1") {
    SplitMix64 rng(47);
    for (int inst = 0; inst < 20; ++inst) {
        const double a1 = dyadic(rng), a2 = dyadic(rng);
        TranslationFlow flow{{1.0, a1, a2}};
        const double c = dyadic(rng);
        const std::vector<double> x{c, dyadic(rng), dyadic(rng)};
        auto s = poincare_section(flow, Reparametrization(), c, x);
        CHECK(s.return_time == 1.0);
        CHECK(s.point[0] == c);
        const long D = 1L << 20;
        auto exact = [&](double xi, double ai) {
            Rational t = frac(Rational(std::lround(xi * D), D) +
                              Rational(std::lround(ai * D), D));
            return numerator(t).convert_to<double>() /
                   denominator(t).convert_to<double>();
        };
        CHECK(s.point[1] == exact(x[1], a1));
        CHECK(s.point[2] == exact(x[2], a2));
    }

    // off the section: partial travel time and partial translation
    TranslationFlow flow{{1.0, 0.5, 0.25}};
    auto s = poincare_section(flow, Reparametrization(), 0.75,
                              {0.25, 0.0, 0.0});
    CHECK(s.return_time == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.point[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(s.point[2] == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("reparametrized section: return times within [1/C, C], points on "
          "the section, near-constant speeds near the translation") {
    auto phi = cos_speed(3);
    const double C = phi.certified_C();
    SplitMix64 rng(53);
    for (int inst = 0; inst < 10; ++inst) {
        TranslationFlow flow{
            {1.0, 0.3 + 0.6 * rng.next_double(), 0.3 + 0.6 * rng.next_double()}};
        const double c = rng.next_double();
        std::vector<double> x{c, rng.next_double(), rng.next_double()};
        auto s = poincare_section(flow, phi, c, x);
        CHECK(s.point[0] == c);
        CHECK(s.return_time >= 1.0 / C - 1e-6);
        CHECK(s.return_time <= C + 1e-6);
        // iterating stays on the section
        auto s2 = poincare_section(flow, phi, c, s.point);
        CHECK(s2.point[0] == c);
        CHECK(s2.return_time >= 1.0 / C - 1e-6);
        CHECK(s2.return_time <= C + 1e-6);
    }

    // a 1e-3-amplitude speed perturbs the section map by O(1e-3) only
    Reparametrization tiny(1.0, {TrigTerm{{1, 0, 0}, 1e-3, 0.0}});
    TranslationFlow flow{{1.0, 0.6180339887498949, 0.41421356237309515}};
    std::vector<double> x{0.3, 0.2, 0.9};
    auto exact = poincare_section(flow, Reparametrization(), 0.3, x);
    auto pert = poincare_section(flow, tiny, 0.3, x);
    CHECK(std::abs(pert.return_time - exact.return_time) < 5e-3);
    CHECK(circle_dist_d(pert.point[1], exact.point[1]) < 5e-3);
    CHECK(circle_dist_d(pert.point[2], exact.point[2]) < 5e-3);
}

TEST_CASE("flow hits are bracketed by section hits at doubled radius") {
    // if the flow enters B_r(y) during a pass, the crossing of {x_1 = y_1}
    // in that pass lies within 2r of (y_2, y_3): the first section entry
    // into the doubled ball happens no later than about the flow hit
    SplitMix64 rng(61);
    for (int inst = 0; inst < 10; ++inst) {
        TranslationFlow flow{
            {1.0, 0.3 + 0.6 * rng.next_double(), 0.3 + 0.6 * rng.next_double()}};
        std::vector<double> x{rng.next_double(), rng.next_double(),
                              rng.next_double()};
        std::vector<double> y{rng.next_double(), rng.next_double(),
                              rng.next_double()};
        const double r = 0.04;
        auto tf = flow_hit(flow, x, y, r, 2000.0);
        REQUIRE(tf.has_value());

        auto first = poincare_section(flow, Reparametrization(), y[0], x);
        double p1 = first.point[1], p2 = first.point[2];
        long n = 0;
        const long n_cap = 3000;
        while (n < n_cap) {
            if (std::max(circle_dist_d(p1, y[1]), circle_dist_d(p2, y[2])) <
                2.0 * r)
                break;
            p1 = wrap_unit(p1 + flow.direction[1]);
            p2 = wrap_unit(p2 + flow.direction[2]);
            ++n;
        }
        REQUIRE(n < n_cap);
        const double section_hit_time = first.return_time + n;
        CHECK(*tf >= section_hit_time - r - 1e-9);
    }
}

TEST_CASE("the density 1/speed is preserved by the time-1 map") {
    auto phi = cos_speed(2);
    TranslationFlow flow{{1.0, 0.6180339887498949}};
    auto [mu_q, mu_pre] = invariant_measure_proxy(
        flow, phi, {0.15, 0.1}, {0.85, 0.9}, 316, 2024);
    CHECK(mu_q > 0.3);
    CHECK(std::abs(mu_pre - mu_q) / mu_q < 1e-3);

    // control: the doubled cube under a constant speed (exact translation)
    auto [cq, cpre] = invariant_measure_proxy(
        flow, Reparametrization(), {0.15, 0.1}, {0.85, 0.9}, 316, 2024);
    CHECK(std::abs(cpre - cq) / cq < 1e-3);
}
