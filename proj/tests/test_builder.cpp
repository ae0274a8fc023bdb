#include "doctest.h"
#include "hitlab/certified.hpp"
#include "hitlab/pair_builder.hpp"

using namespace hitlab;

namespace {

std::vector<BigInt> denominators(const ContinuedFraction& cf) {
    auto cs = convergents(cf, cf.depth());
    std::vector<BigInt> q;
    for (auto& c : cs) q.push_back(c.q);
    return q;
}

}  // namespace

TEST_CASE("build_pair gamma=2 greedy hand construction") {
    auto pair = build_pair(2.0, 2, {BigInt(2)});
    auto qa = denominators(pair.alpha);
    auto qp = denominators(pair.alpha_prime);
    CHECK(qa[1] == 2);
    CHECK(qp[1] == 4);  // a'_1 = 4
    CHECK(pair.alpha_prime.quotients[0] == 4);
    CHECK(qa[2] == 17);  // a_2 = 8
    CHECK(pair.alpha.quotients[1] == 8);
    CHECK(qp[2] == 289);  // a'_2 = 72, and 289 = 17^2 exactly
    CHECK(pair.alpha_prime.quotients[1] == 72);
}

TEST_CASE("build_pair round-trips through verify_membership") {
    for (double gamma : {1.3, 1.5, 2.0, 3.0}) {
        auto pair = build_pair(gamma, 5);
        auto rep = verify_membership(pair);
        CHECK(rep.all_ok);
        CHECK(rep.levels.size() == 5);
        for (auto& lr : rep.levels) {
            CHECK(lr.prime_ok);
            CHECK(lr.next_ok);
            CHECK(lr.margin_prime >= -1e-9);
            CHECK(lr.margin_next >= -1e-9);
        }
    }
}

TEST_CASE("greedy minimality: one less breaks the inequality") {
    auto pair = build_pair(2.0, 4);
    auto qa = denominators(pair.alpha);
    auto qp = denominators(pair.alpha_prime);
    for (int n = 1; n <= 4; ++n) {
        const std::size_t un = static_cast<std::size_t>(n);
        const BigInt& ap = pair.alpha_prime.quotients[un - 1];
        if (ap > 1) {
            BigInt smaller = (ap - 1) * qp[un - 1] +
                             (un >= 2 ? qp[un - 2] : BigInt(0));
            CHECK(smaller < ceil_pow(qa[un], 2.0));
        }
        const BigInt& an = pair.alpha.quotients[un];  // a_{n+1}
        if (an > 1) {
            BigInt smaller = (an - 1) * qa[un] + qa[un - 1];
            CHECK(smaller < ceil_pow(qp[un], 2.0));
        }
    }
}

TEST_CASE("pair components have type about gamma^2") {
    auto pair = build_pair(2.0, 5);
    CHECK(type_estimate(pair.alpha) >= 0.9 * 4.0);
    CHECK(type_estimate(pair.alpha_prime) >= 0.9 * 4.0);
}

TEST_CASE("seed prefixes are respected, enforcement picks up after them") {
    std::vector<BigInt> seed_a{BigInt(3), BigInt(1)};
    std::vector<BigInt> seed_p{BigInt(2)};
    auto pair = build_pair(1.5, 3, seed_a, seed_p);
    CHECK(pair.alpha.quotients[0] == 3);
    CHECK(pair.alpha.quotients[1] == 1);
    CHECK(pair.alpha_prime.quotients[0] == 2);
    // prefix-covered quotients may violate their level; later ones may not
    auto rep = verify_membership(pair);
    auto qa = denominators(pair.alpha);
    auto qp = denominators(pair.alpha_prime);
    CHECK(qp[2] >= ceil_pow(qa[2], 1.5));
    CHECK(qa[3] >= ceil_pow(qp[2], 1.5));
    CHECK(rep.levels.size() == 3);
}

TEST_CASE("build_pair preconditions and budget") {
    CHECK_THROWS_AS(build_pair(2.0, 0), ConfigError);
    CHECK_THROWS_AS(build_pair(1.0, 3), ConfigError);
    CHECK_THROWS_AS(build_pair(0.5, 3), ConfigError);
    // 3^(2^n)-style growth blows through a small budget quickly
    CHECK_THROWS_AS(build_pair(3.0, 30, {}, {}, 256), ResourceError);
}

TEST_CASE("verify_membership on handcrafted pairs") {
    // (golden, golden) fails at level 1 for any gamma > 1
    IntertwinedPair gg;
    gg.alpha = golden_cf(10);
    gg.alpha_prime = golden_cf(10);
    gg.gamma = 1.1;
    gg.levels = 3;
    gg.regime = PairRegime::power;
    auto rep = verify_membership(gg);
    CHECK(!rep.all_ok);
    CHECK(!rep.levels[1].prime_ok);  // q'_2 = 2 < 2^1.1

    // boundary: q'_1 = ceil(q_1^gamma) exactly passes with ~zero margin
    IntertwinedPair edge;
    edge.alpha = make_cf(0, {2});
    edge.alpha_prime = make_cf(0, {4});
    edge.gamma = 2.0;
    edge.levels = 1;
    edge.regime = PairRegime::power;
    // level 1 also needs q_2; give alpha a second quotient satisfying it
    edge.alpha.quotients.push_back(BigInt(8));  // q_2 = 17 >= 16
    auto rep2 = verify_membership(edge);
    CHECK(rep2.all_ok);
    CHECK(rep2.levels[0].margin_prime == doctest::Approx(0.0).epsilon(0.01));
}

TEST_CASE("exponential pair: level 1 exact, deeper levels are infeasible") {
    auto pair = build_exponential_pair(1);
    auto qa = denominators(pair.alpha);
    auto qp = denominators(pair.alpha_prime);
    CHECK(qa[1] == 1);
    CHECK(qp[1] == 21);  // ceil(e^3)
    CHECK(qa[2] == ceil_exp_int(BigInt(63)));
    CHECK(verify_membership(pair).all_ok);

    CHECK_THROWS_AS(build_exponential_pair(0), ConfigError);
    CHECK_THROWS_AS(build_exponential_pair(4), ResourceError);
    CHECK_THROWS_AS(build_exponential_pair(2), ResourceError);
}
