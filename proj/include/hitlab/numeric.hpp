#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace hitlab {

// GMP-backed integers: sub-quadratic multiplication keeps the pair builder
// usable at multi-megabit denominators.
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Floored modulo: result in [0, m), m > 0.
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

// Fractional part in [0, 1).
inline Rational frac(const Rational& x) {
    BigInt n = numerator(x), d = denominator(x);
    return Rational(mod_floor(n, d), d);
}

// Distance from x to the nearest integer, in [0, 1/2].
inline Rational dist_to_int(const Rational& x) {
    Rational f = frac(x);
    Rational g = 1 - f;
    return f < g ? f : g;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    // b > 0
    BigInt q = a / b, r = a % b;
    if (r > 0) ++q;
    return q;
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline std::string to_fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

struct HorizonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DepthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hitlab
