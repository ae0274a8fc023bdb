#pragma once

#include <optional>

#include "hitlab/numeric.hpp"

namespace hitlab {

// Minimal n >= 0 with (n*a + c) mod m <= len, or nullopt if no n exists.
// Runs in O(log m) big-integer steps (Euclid-style descent).
std::optional<BigInt> min_shift(BigInt a, const BigInt& m, BigInt c, const BigInt& len);

// sum_{i=0}^{n-1} floor((a*i + b) / m), m > 0, n >= 0; a, b may be negative.
BigInt floor_sum(BigInt n, BigInt m, BigInt a, BigInt b);

// #{ n in [1, N] : (n*a + c) mod m <= len }.
BigInt count_shift_hits(const BigInt& N, const BigInt& m, const BigInt& a,
                        const BigInt& c, const BigInt& len);

}  // namespace hitlab
