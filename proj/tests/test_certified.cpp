#include <cmath>

#include "doctest.h"
#include "hitlab/certified.hpp"

using namespace hitlab;

TEST_CASE("ceil_pow exact integer powers") {
    CHECK(ceil_pow(BigInt(17), 2.0) == 289);
    CHECK(ceil_pow(BigInt(2), 2.0) == 4);
    CHECK(ceil_pow(BigInt(10), 3.0) == 1000);
    CHECK(ceil_pow(BigInt(1), 7.5) == 1);
}

TEST_CASE("ceil_pow fractional exponents") {
    CHECK(ceil_pow(BigInt(2), 1.5) == 3);     // 2.828...
    CHECK(ceil_pow(BigInt(4), 1.5) == 8);     // exactly 8
    CHECK(ceil_pow(BigInt(1000), 1.5) == 31623);  // 31622.77...
}

TEST_CASE("ceil_exp_int") {
    CHECK(ceil_exp_int(BigInt(1)) == 3);
    CHECK(ceil_exp_int(BigInt(3)) == 21);
    CHECK_THROWS_AS(ceil_exp_int(BigInt(1) << 40), ResourceError);
}

TEST_CASE("exp interval encloses and is tight") {
    Ival v = exp_interval(-5.0);
    double lo = v.lower().convert_to<double>();
    double hi = v.upper().convert_to<double>();
    CHECK(lo <= std::exp(-5.0));
    CHECK(hi >= std::exp(-5.0));
    CHECK((hi - lo) / lo < 1e-30);
}

TEST_CASE("simplest_in_interval") {
    CHECK(simplest_in_interval(Rational(2, 7), Rational(1, 3)) == Rational(1, 3));
    CHECK(simplest_in_interval(Rational(7, 3), Rational(5, 2)) == Rational(5, 2));
    CHECK(simplest_in_interval(Rational(3, 8), Rational(5, 8)) == Rational(1, 2));
    CHECK(simplest_in_interval(Rational(-1, 4), Rational(1, 5)) == 0);
    CHECK(simplest_in_interval(Rational(141, 100), Rational(142, 100)) ==
          Rational(17, 12));
}

TEST_CASE("rationalize e^-n within relative error") {
    for (int n = 1; n <= 14; ++n) {
        Rational r = rationalize(exp_interval(-n), 1e-3);
        double v = r.convert_to<double>();
        double target = std::exp(-n);
        CHECK(std::abs(v - target) / target < 1.1e-3);
    }
}
