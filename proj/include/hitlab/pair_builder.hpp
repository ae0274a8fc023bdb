#pragma once

#include <vector>

#include "hitlab/cf.hpp"
#include "hitlab/numeric.hpp"

namespace hitlab {

enum class PairRegime { power, exponential };

// Pair of continued fractions whose denominators interlock: at each enforced
// level n, q'_n >= q_n^gamma and q_{n+1} >= (q'_n)^gamma (power regime), or
// q'_n >= e^{3 q_n} and q_{n+1} >= e^{3 q'_n} (exponential regime, gamma
// unused and stored as 1).
struct IntertwinedPair {
    ContinuedFraction alpha;
    ContinuedFraction alpha_prime;
    double gamma = 1.0;
    int levels = 0;
    PairRegime regime = PairRegime::power;
};

struct LevelReport {
    int level = 0;
    bool prime_ok = false;  // q'_n against q_n
    bool next_ok = false;   // q_{n+1} against q'_n
    // log q'_n - gamma log q_n  resp.  log q'_n - 3 q_n (and symmetrically);
    // nonnegative iff the exact inequality holds, up to the double rounding
    // of the logs (the booleans are the exact verdicts).
    double margin_prime = 0.0;
    double margin_next = 0.0;
};

struct MembershipReport {
    std::vector<LevelReport> levels;
    bool all_ok = false;
};

// Greedy construction of a power-regime pair: every quotient not fixed by a
// seed prefix is the minimal admissible choice for its inequality,
// a'_n = max(1, ceil((ceil(q_n^gamma) - q'_{n-2}) / q'_{n-1})) and
// symmetrically for a_{n+1}. An empty alpha seed defaults to [0;2] so the
// construction does not start from the degenerate all-ones fraction.
// Denominators exceeding `bit_budget` bits abort with a ResourceError that
// names the level reached. Inequalities are re-verified exactly post-hoc.
IntertwinedPair build_pair(double gamma, int levels,
                           const std::vector<BigInt>& seed_alpha = {},
                           const std::vector<BigInt>& seed_alpha_prime = {},
                           long bit_budget = 1L << 20);

// Exponential-regime pair starting from q_1 = 1: level 1 gives
// q'_1 = ceil(e^3) = 21 and q_2 = ceil(e^63). Any level >= 2 needs
// e^{3 q_2} with q_2 ~ 2.3e27, i.e. ~10^27 digits, and aborts with a
// ResourceError naming the level; levels outside [1,3] are rejected up
// front.
IntertwinedPair build_exponential_pair(int levels, long bit_budget = 1L << 22);

// Exact re-check of every level (certified-ceiling comparisons); failures
// are report entries, never errors.
MembershipReport verify_membership(const IntertwinedPair& pair);

}  // namespace hitlab
