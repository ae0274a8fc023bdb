#pragma once

#include <vector>

#include "hitlab/arc_union.hpp"
#include "hitlab/certified.hpp"
#include "hitlab/cf.hpp"
#include "hitlab/pair_builder.hpp"
#include "hitlab/three_gap.hpp"

namespace hitlab {

// Index n >= 1 with ||q_n alpha|| < 2r <= ||q_{n-1} alpha|| (norms taken on
// the truncation's own convergent ladder); DepthError when r falls outside
// every window representable at the stored depth.
std::size_t locate_window(const ContinuedFraction& alpha, const Rational& r);

// Parameters of one key-lemma application. Constructed only through
// make_key_lemma_query, which certifies the window condition
// M ||q_n a||^{1/beta} <= 2r <= (1/N) ||q_{n-1} a||.
struct KeyLemmaQuery {
    double beta = 1.0;
    double M = 1.0;
    double N = 1.0;
    std::size_t n = 0;
    Rational r;
};

KeyLemmaQuery make_key_lemma_query(const ContinuedFraction& alpha, double beta,
                                   double M, double N, std::size_t n,
                                   const Rational& r);

// Exact level set {x : tau_r(x, x0) = k} = T^{-k}(B) \ U_{j<k} T^{-j}(B).
ArcUnion level_set(const Rational& alpha, const Rational& x0,
                   const Rational& r, const BigInt& k);
ArcUnion level_set(const ContinuedFraction& alpha, const Rational& x0,
                   const Rational& r, const BigInt& k);

// Exact mu( U_{1<=n<K} T^{-n} B(x0, r) ) = mu{ tau_r(., x0) < K }. The
// value does not depend on x0 (rotation invariance); x0 is accepted for
// interface symmetry. Small unions are computed directly as arc unions,
// large ones through the three-gap structure of the preimage centers; the
// two paths agree exactly and are cross-checked in tests.
Rational tail_measure(const Rational& alpha, const Rational& x0,
                      const Rational& r, const BigInt& K);
Rational tail_measure(const ContinuedFraction& alpha, const Rational& x0,
                      const Rational& r, const BigInt& K);

// ceil((2r)^{-beta}), certified.
BigInt key_lemma_threshold(const Rational& r, double beta);

struct KeyLemmaResult {
    BigInt K;            // ceil((2r)^{-beta})
    Rational lhs;        // exact mu{ tau_r < (2r)^{-beta} }
    Rational rhs_lower;  // certified lower bound of 1/N + 1/M^beta
    bool holds;          // lhs <= rhs_lower (no floating-point acceptance)
};

KeyLemmaResult check_key_lemma(const ContinuedFraction& alpha,
                               const KeyLemmaQuery& query);

// One window of the interleaved schedule driving the Borel-Cantelli
// argument: in 2r-space, [M_n ||q_n a||^{1/b}, (1/N_n) ||q_{n-1} a||] for
// the unprimed fraction with M_n = n, and the primed analogue, where
//   N_n = (1/(n-1)) ||q_{n-1} a|| / ||q'_{n-1} a'||^{1/b},
//   N'_n = (1/n) ||q'_{n-1} a'|| / ||q_n a||^{1/b}.
// Endpoints are certified inward (lo_upper/hi_lower), so any 2r between
// them certainly lies in the window.
struct WindowEntry {
    int level = 0;
    bool primed = false;
    double M = 1.0;
    double N = 1.0;
    Rational lo_upper;
    Rational hi_lower;
    bool nonempty = false;       // certified: lo_upper <= hi_lower
    bool N_at_least_one = false; // certified N >= 1 (lemma hypothesis)
    double coverage_ratio = 0.0; // approximate hi/lo; -> infinity in-class
};

struct WindowScheduleReport {
    std::vector<WindowEntry> windows;  // levels 2..n_max, alternating I, I'
    bool all_nonempty = false;         // every generated window nonempty
};

WindowScheduleReport window_schedule(const IntertwinedPair& pair, double beta,
                                     int max_level);

struct BorelCantelliRow {
    WindowEntry window;
    int radius_count = 0;
    std::vector<Rational> radii;   // dyadic e^{-i} approximations, 2r in window
    Rational sum_measure{0};       // exact sum of min(tail, tail') over radii
    // Certified lower bounds of the two series bounds: the lemma-derived
    // (1/N)(1/(1-e^{-1})) + (1/M^beta)(1/(1-e^{-beta})) and, for reference,
    // the same display with gamma in place of beta.
    Rational series_bound_beta{0};
    Rational series_bound_gamma{0};
    bool degenerate = false;  // N not certifiably >= 1: bound vacuous
    bool bounded = false;     // !degenerate && sum_measure <= bound(beta)
};

struct BorelCantelliReport {
    double beta = 0.0;
    std::vector<BorelCantelliRow> rows;
    std::vector<Rational> partial_sums;
    bool all_bounded = false;  // over non-degenerate rows
};

BorelCantelliReport borel_cantelli_report(const IntertwinedPair& pair,
                                          double beta, int max_level);

// log mu(B_r) / log r for sup-metric balls of Lebesgue T^d, mu(B_r)=(2r)^d.
std::vector<double> local_dimension_probe(int d,
                                          const std::vector<Rational>& radii);

}  // namespace hitlab
