#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "hitlab/numeric.hpp"

namespace hitlab {

// Interval with certified mpfr endpoints: the represented real lies in
// [lo, hi]. All operations round outward, so enclosure is preserved.
// Comparisons against exact rationals pass only when they hold against
// the safe endpoint.
class Ival {
public:
    explicit Ival(mpfr_prec_t prec = 256);
    Ival(const Ival& o);
    Ival(Ival&& o) noexcept;
    Ival& operator=(Ival o);
    ~Ival();

    static Ival exact(const BigInt& v, mpfr_prec_t prec = 256);
    static Ival exact(const Rational& v, mpfr_prec_t prec = 256);
    static Ival exact(double v, mpfr_prec_t prec = 256);

    Ival operator+(const Ival& o) const;
    Ival operator-(const Ival& o) const;
    Ival operator*(const Ival& o) const;
    Ival operator/(const Ival& o) const;
    Ival neg() const;
    Ival inv() const;

    Ival exp() const;
    Ival log() const;  // requires lo > 0
    Ival pow(const Ival& y) const;  // requires lo > 0

    bool certainly_less(const Ival& o) const;
    bool certainly_positive() const;

    // Exact rational enclosure of the interval endpoints.
    Rational lower() const;
    Rational upper() const;
    double mid() const;

    // Certified floor/ceil: present only when unambiguous at this precision.
    std::optional<BigInt> floor_certified() const;
    std::optional<BigInt> ceil_certified() const;

    mpfr_prec_t precision() const { return prec_; }

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;

    friend Ival make_interval(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec);
};

// ceil(q^gamma), certified; precision is raised until the value is pinned.
BigInt ceil_pow(const BigInt& q, double gamma);

// ceil(e^t) for a positive integer t; guards against absurd magnitudes.
BigInt ceil_exp_int(const BigInt& t, long max_bits = 1 << 22);

// Bounds on base^exponent for positive base.
Ival pow_interval(const Rational& base, double exponent, mpfr_prec_t prec = 256);

// Bounds on e^x.
Ival exp_interval(double x, mpfr_prec_t prec = 256);

// The simplest rational inside [lo, hi] (smallest denominator), lo <= hi.
Rational simplest_in_interval(const Rational& lo, const Rational& hi);

// Rational approximation of the enclosed value, within relative error
// rel_err, with the smallest denominator that achieves it.
Rational rationalize(const Ival& v, double rel_err = 1e-3);

// Dyadic approximation of the enclosed positive value: the midpoint rounded
// to `bits` significant bits, so relative error <= 2^(1-bits) plus the
// enclosure width. The denominator is a power of two, which keeps common
// denominators small when many such values enter one exact sum.
Rational dyadic_round(const Ival& v, int bits = 16);

}  // namespace hitlab
