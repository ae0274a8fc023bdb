#pragma once

#include <optional>
#include <vector>

#include "hitlab/cf.hpp"
#include "hitlab/numeric.hpp"

namespace hitlab {

// Point on S^1 = R/Z, stored as an exact rational reduced into [0,1).
struct CirclePoint {
    Rational v{0};

    CirclePoint() = default;
    explicit CirclePoint(Rational r) : v(frac(std::move(r))) {}
};

// Point on T^d (d = 2 or 3) under the sup metric.
struct TorusPoint {
    std::vector<Rational> c;

    TorusPoint() = default;
    explicit TorusPoint(std::vector<Rational> coords);
    std::size_t dim() const { return c.size(); }
};

// Distance of a - b to the nearest integer.
Rational circle_dist(const Rational& a, const Rational& b);
// sup_i ||a_i - b_i||.
Rational sup_dist(const TorusPoint& a, const TorusPoint& b);

// Result of a first-entry search. An empty tau means "not found within
// horizon" -- a value, not an error; callers treat it as censored data.
struct HittingRecord {
    Rational radius;
    std::optional<BigInt> tau;
    BigInt horizon;

    bool found() const { return tau.has_value(); }
};

// Streams, in increasing order, the times n >= 1 with ||x + n a - x0|| < r
// (open ball, exact arithmetic). Everything is reduced to residues mod a
// common denominator D: with A = aD, the hit condition becomes
// (rho0 + nA) mod D <= len where len = 2rD - 2. The first entry and any
// entry whose gap structure is not yet known come from the exact O(log D)
// solver; once two distinct inter-entry gaps have been observed, stepping
// tries a candidate gap set that provably contains the full gap set of the
// rotation (the gaps take at most three values p, q, p+q, so the observed
// pair together with its sum and difference covers every case), falling
// back to the solver if no candidate fires.
class EntryEnumerator {
  public:
    EntryEnumerator(const Rational& alpha, const Rational& x,
                    const Rational& x0, const Rational& r);

    // Next entry time, or nullopt once entries stop existing or would
    // exceed `horizon` (the enumerator is then exhausted).
    std::optional<BigInt> next(const BigInt& horizon);

    // Time of the last entry produced (0 before the first call).
    const BigInt& last_time() const { return n_cur_; }

  private:
    BigInt D_, A_, len_, rho0_;
    BigInt n_cur_{0};
    BigInt rho_cur_{0};
    bool started_ = false;
    bool exhausted_ = false;
    std::vector<BigInt> gaps_;                       // distinct, sorted
    std::vector<std::pair<BigInt, BigInt>> cands_;   // (gap, gap*A mod D)

    std::optional<BigInt> solve_from(const BigInt& rho, BigInt* rho_out);
    void note_gap(const BigInt& g);
    void rebuild_candidates();
};

// tau_r(x, x0) = min{n >= 1 : ||x + n alpha - x0|| < r}, exact.
// The Rational overloads treat alpha as the intended (rational) angle; the
// ContinuedFraction overloads treat it as a truncation standing in for an
// irrational and enforce the horizon invariant (HorizonError on violation).
// 0 < r < 1/2 is required (ConfigError otherwise).
HittingRecord hit_circle(const Rational& alpha, const CirclePoint& x,
                         const CirclePoint& x0, const Rational& r,
                         const BigInt& horizon);
HittingRecord hit_circle(const ContinuedFraction& alpha, const CirclePoint& x,
                         const CirclePoint& x0, const Rational& r,
                         const BigInt& horizon);

// First `count` entry times, strictly increasing; shorter if the orbit has
// fewer entries within `horizon`.
std::vector<BigInt> next_entries(const Rational& alpha, const CirclePoint& x,
                                 const CirclePoint& x0, const Rational& r,
                                 std::size_t count, const BigInt& horizon);
std::vector<BigInt> next_entries(const ContinuedFraction& alpha,
                                 const CirclePoint& x, const CirclePoint& x0,
                                 const Rational& r, std::size_t count,
                                 const BigInt& horizon);

// First n >= 1 with both coordinates of x + n(a1,a2) within r of x0 (sup
// metric). Enumerates the entries of the coordinate with the fewer hits up
// to the horizon and tests the other coordinate per entry; throws
// ResourceError if more than `max_entries` entries must be scanned. The
// product bound tau >= max(tau_1, tau_2) is asserted on every found hit.
HittingRecord hit_torus2(const Rational& a1, const Rational& a2,
                         const TorusPoint& x, const TorusPoint& x0,
                         const Rational& r, const BigInt& horizon,
                         const BigInt& max_entries = BigInt(1) << 26);
HittingRecord hit_torus2(const ContinuedFraction& a1,
                         const ContinuedFraction& a2, const TorusPoint& x,
                         const TorusPoint& x0, const Rational& r,
                         const BigInt& horizon,
                         const BigInt& max_entries = BigInt(1) << 26);

// tau_r(x, x): first return of the orbit into the ball around its start.
HittingRecord recurrence_time(const Rational& alpha, const CirclePoint& x,
                              const Rational& r, const BigInt& horizon);
HittingRecord recurrence_time(const ContinuedFraction& alpha,
                              const CirclePoint& x, const Rational& r,
                              const BigInt& horizon);

// d_n(x, x0) = min_{1<=i<=n} ||x + i alpha - x0|| for n = 1..n_max,
// exact and non-increasing. The ContinuedFraction overload additionally
// checks, after the fact, that the truncation resolves the smallest
// distance reached (horizon invariant with radius d_{n_max}).
std::vector<Rational> d_n_sequence(const Rational& alpha, const CirclePoint& x,
                                   const CirclePoint& x0, long n_max);
std::vector<Rational> d_n_sequence(const ContinuedFraction& alpha,
                                   const CirclePoint& x, const CirclePoint& x0,
                                   long n_max);

// Same for a 2-torus translation under the sup metric.
std::vector<Rational> d_n_sequence_torus2(const Rational& a1,
                                          const Rational& a2,
                                          const TorusPoint& x,
                                          const TorusPoint& x0, long n_max);

}  // namespace hitlab
