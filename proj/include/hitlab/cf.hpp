#pragma once

#include <vector>

#include "hitlab/numeric.hpp"

namespace hitlab {

// Finite continued fraction [a0; a1, ..., aN] standing in for an irrational.
// Convergents use the initialization p_{-1}=1, p_0=0, q_{-1}=0, q_0=1, so
// p_n/q_n approximates the fractional part; value() re-adds the integer part.
struct ContinuedFraction {
    BigInt a0;
    std::vector<BigInt> quotients;  // a_1..a_N, all >= 1

    std::size_t depth() const { return quotients.size(); }
};

struct Convergent {
    BigInt p;
    BigInt q;
    int index = 0;
};

// Validates partial quotients (a_k >= 1 for k >= 1).
void validate(const ContinuedFraction& cf);

// Natural log of a positive big integer, via its top mantissa bits.
double log_big(const BigInt& v);

// Natural log of a positive rational, safe for values far outside double
// range.
double log_rational(const Rational& v);

// Convergents (p_k, q_k) for k = 0..n.
std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t n);

// Exact value a0 + p_N/q_N.
Rational value(const ContinuedFraction& cf);

// |q_n * frac(value(cf)) - p_n| as an exact rational. For n >= 1 this equals
// the distance of q_n * value to the nearest integer; at n = 0 (p_0 = 0) it
// is the fractional part itself, which is what the convergent bound chain
// uses. Needs n <= depth - 2 so the truncation sits on the correct side of
// the n-th convergent.
Rational norm_q_alpha(const ContinuedFraction& cf, std::size_t n);

// Finite-depth surrogate of limsup log q_{n+1} / log q_n: the max of that
// ratio over the trailing half of the stored indices (indices with q_n = 1
// are skipped). Always >= 1.
double type_estimate(const ContinuedFraction& cf);

// Truncation-honesty check: a computation that uses up to `iterations`
// iterates at resolution `radius` needs iterations / (q_N q_{N-1}) < radius/10,
// otherwise the truncation could be distinguished from the intended
// irrational. Throws HorizonError on violation.
void check_horizon(const ContinuedFraction& cf, const BigInt& iterations,
                   const Rational& radius);

// Quotients of a rational p/q in [0,1), 0 < p < q (for engineering angles).
ContinuedFraction cf_from_rational(const Rational& x);

// Convenience builders.
ContinuedFraction make_cf(long a0, std::initializer_list<long> qs);
ContinuedFraction golden_cf(std::size_t depth);  // [0;1,1,...,1]

}  // namespace hitlab
