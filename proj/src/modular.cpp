#include "hitlab/modular.hpp"

#include <utility>

namespace hitlab {

std::optional<BigInt> min_shift(BigInt a, const BigInt& m, BigInt c, const BigInt& len) {
    if (m <= 0) throw std::invalid_argument("min_shift: modulus must be positive");
    a = mod_floor(a, m);
    c = mod_floor(c, m);
    if (c <= len) return BigInt(0);
    if (a == 0) return std::nullopt;
    // Mirror so the multiplier is at most m/2; the solution set is unchanged:
    // (n*a + c) mod m <= len  <=>  (n*(m-a) + (len-c)) mod m <= len.
    if (2 * a > m) return min_shift(m - a, m, mod_floor(len - c, m), len);

    // Target for y = (n*a) mod m: y in [lo, hi], 1 <= lo <= hi < m.
    BigInt lo = m - c;
    BigInt hi = m - c + len;
    if (hi >= m) hi = m - 1;  // len >= c would have returned already; defensive
    // First lap: smallest multiple of a inside [lo, hi].
    BigInt n0 = ceil_div(lo, a);
    if (n0 * a <= hi) return n0;
    // Otherwise n*a = k*m + r with r in [lo, hi], r == -k*m (mod a).
    // Interval is shorter than a here, so each k admits at most one r, and n
    // grows with k: recurse for the minimal k.
    auto k = min_shift(mod_floor(-m, a), a, mod_floor(-lo, a), hi - lo);
    if (!k) return std::nullopt;
    BigInt t = mod_floor(-(*k) * m, a);
    BigInt r = lo + mod_floor(t - lo, a);
    return ((*k) * m + r) / a;
}

BigInt floor_sum(BigInt n, BigInt m, BigInt a, BigInt b) {
    if (n < 0) throw std::invalid_argument("floor_sum: n must be >= 0");
    if (m <= 0) throw std::invalid_argument("floor_sum: m must be positive");
    BigInt ans = 0;
    if (a < 0) {
        BigInt a2 = mod_floor(a, m);
        ans -= n * (n - 1) / 2 * ((a2 - a) / m);
        a = a2;
    }
    if (b < 0) {
        BigInt b2 = mod_floor(b, m);
        ans -= n * ((b2 - b) / m);
        b = b2;
    }
    while (true) {
        if (a >= m) {
            ans += n * (n - 1) / 2 * (a / m);
            a %= m;
        }
        if (b >= m) {
            ans += n * (b / m);
            b %= m;
        }
        BigInt y_max = a * n + b;
        if (y_max < m) break;
        n = y_max / m;
        b = y_max % m;
        std::swap(m, a);
    }
    return ans;
}

BigInt count_shift_hits(const BigInt& N, const BigInt& m, const BigInt& a,
                        const BigInt& c, const BigInt& len) {
    if (N <= 0) return 0;
    if (len >= m - 1) return N;
    if (len < 0) return 0;
    // [x mod m <= len] == floor(x/m) - floor((x-len-1)/m)
    BigInt hi = floor_sum(N, m, a, a + c);
    BigInt lo = floor_sum(N, m, a, a + c - len - 1);
    return hi - lo;
}

}  // namespace hitlab
