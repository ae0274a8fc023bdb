#include "hitlab/orbit.hpp"

#include <algorithm>
#include <stdexcept>

#include "hitlab/modular.hpp"

namespace hitlab {

namespace {

// Residue form of one circle hitting problem: hit at step n iff
// (rho0 + n A) mod D <= len.
struct ResidueSystem {
    BigInt D, A, len, rho0;
};

BigInt scale_to(const Rational& v, const BigInt& D) {
    return mod_floor(numerator(v) * (D / denominator(v)), D);
}

void require_ball(const Rational& r) {
    if (r <= 0 || r >= Rational(1, 2))
        throw ConfigError("ball radius must lie strictly between 0 and 1/2");
}

ResidueSystem make_system(const Rational& alpha, const Rational& x,
                          const Rational& x0, const Rational& r) {
    require_ball(r);
    BigInt D = lcm(denominator(alpha), denominator(x));
    D = lcm(D, denominator(x0));
    D = lcm(D, denominator(r));
    ResidueSystem s;
    s.D = D;
    s.A = scale_to(frac(alpha), D);
    BigInt R = numerator(r) * (D / denominator(r));
    s.len = 2 * R - 2;
    s.rho0 = mod_floor(scale_to(frac(x), D) - scale_to(frac(x0), D) + R - 1, D);
    return s;
}

}  // namespace

TorusPoint::TorusPoint(std::vector<Rational> coords) : c(std::move(coords)) {
    if (c.size() != 2 && c.size() != 3)
        throw ConfigError("torus points have 2 or 3 coordinates");
    for (auto& v : c) v = frac(v);
}

Rational circle_dist(const Rational& a, const Rational& b) {
    return dist_to_int(a - b);
}

Rational sup_dist(const TorusPoint& a, const TorusPoint& b) {
    if (a.dim() != b.dim()) throw ConfigError("dimension mismatch");
    Rational best = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        best = std::max(best, circle_dist(a.c[i], b.c[i]));
    return best;
}

EntryEnumerator::EntryEnumerator(const Rational& alpha, const Rational& x,
                                 const Rational& x0, const Rational& r) {
    ResidueSystem s = make_system(alpha, x, x0, r);
    D_ = s.D;
    A_ = s.A;
    len_ = s.len;
    rho0_ = s.rho0;
}

std::optional<BigInt> EntryEnumerator::solve_from(const BigInt& rho,
                                                  BigInt* rho_out) {
    // Minimal k >= 1 with (rho + k A) mod D <= len, as 1 + min_shift offset.
    BigInt c = rho + A_;
    if (c >= D_) c -= D_;
    auto k = min_shift(A_, D_, c, len_);
    if (!k) return std::nullopt;
    *rho_out = mod_floor(c + *k * A_, D_);
    return BigInt(1 + *k);
}

void EntryEnumerator::note_gap(const BigInt& g) {
    if (std::find(gaps_.begin(), gaps_.end(), g) != gaps_.end()) return;
    gaps_.insert(std::upper_bound(gaps_.begin(), gaps_.end(), g), g);
    rebuild_candidates();
}

void EntryEnumerator::rebuild_candidates() {
    std::vector<BigInt> cand = gaps_;
    // Close the observed set under the sums/differences of its smallest
    // members: the true gap set is {p, q, p+q}, and any two of its elements
    // generate the third this way.
    std::size_t m = std::min<std::size_t>(gaps_.size(), 3);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            cand.push_back(gaps_[i] + gaps_[j]);
            cand.push_back(gaps_[j] - gaps_[i]);
        }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    cands_.clear();
    for (const auto& g : cand) {
        if (g <= 0) continue;
        cands_.emplace_back(g, mod_floor(g * A_, D_));
    }
}

std::optional<BigInt> EntryEnumerator::next(const BigInt& horizon) {
    if (exhausted_) return std::nullopt;
    BigInt g, rho_next;
    bool solved = false;
    if (started_ && gaps_.size() >= 2) {
        for (const auto& [cg, sh] : cands_) {
            BigInt t = rho_cur_ + sh;
            if (t >= D_) t -= D_;
            if (t <= len_) {
                g = cg;
                rho_next = t;
                solved = true;
                break;
            }
        }
    }
    if (!solved) {
        auto got = solve_from(started_ ? rho_cur_ : rho0_, &rho_next);
        if (!got) {
            exhausted_ = true;
            return std::nullopt;
        }
        g = *got;
    }
    if (started_) note_gap(g);
    n_cur_ += g;
    rho_cur_ = rho_next;
    started_ = true;
    if (n_cur_ > horizon) {
        exhausted_ = true;
        return std::nullopt;
    }
    return n_cur_;
}

HittingRecord hit_circle(const Rational& alpha, const CirclePoint& x,
                         const CirclePoint& x0, const Rational& r,
                         const BigInt& horizon) {
    EntryEnumerator e(alpha, x.v, x0.v, r);
    return {r, e.next(horizon), horizon};
}

HittingRecord hit_circle(const ContinuedFraction& alpha, const CirclePoint& x,
                         const CirclePoint& x0, const Rational& r,
                         const BigInt& horizon) {
    check_horizon(alpha, horizon, r);
    return hit_circle(frac(value(alpha)), x, x0, r, horizon);
}

std::vector<BigInt> next_entries(const Rational& alpha, const CirclePoint& x,
                                 const CirclePoint& x0, const Rational& r,
                                 std::size_t count, const BigInt& horizon) {
    std::vector<BigInt> out;
    EntryEnumerator e(alpha, x.v, x0.v, r);
    while (out.size() < count) {
        auto n = e.next(horizon);
        if (!n) break;
        out.push_back(*n);
    }
    return out;
}

std::vector<BigInt> next_entries(const ContinuedFraction& alpha,
                                 const CirclePoint& x, const CirclePoint& x0,
                                 const Rational& r, std::size_t count,
                                 const BigInt& horizon) {
    check_horizon(alpha, horizon, r);
    return next_entries(frac(value(alpha)), x, x0, r, count, horizon);
}

HittingRecord hit_torus2(const Rational& a1, const Rational& a2,
                         const TorusPoint& x, const TorusPoint& x0,
                         const Rational& r, const BigInt& horizon,
                         const BigInt& max_entries) {
    if (x.dim() != 2 || x0.dim() != 2)
        throw ConfigError("hit_torus2 needs 2-dimensional points");
    ResidueSystem s1 = make_system(a1, x.c[0], x0.c[0], r);
    ResidueSystem s2 = make_system(a2, x.c[1], x0.c[1], r);

    BigInt hits1 = count_shift_hits(horizon, s1.D, s1.A, s1.rho0, s1.len);
    BigInt hits2 = count_shift_hits(horizon, s2.D, s2.A, s2.rho0, s2.len);
    HittingRecord rec{r, std::nullopt, horizon};
    if (hits1 == 0 || hits2 == 0) return rec;

    // Enumerate the sparser coordinate, test the other per entry.
    const bool first_sparser = hits1 <= hits2;
    const Rational& ea = first_sparser ? a1 : a2;
    const Rational& ex = first_sparser ? x.c[0] : x.c[1];
    const Rational& ex0 = first_sparser ? x0.c[0] : x0.c[1];
    const ResidueSystem& t = first_sparser ? s2 : s1;

    EntryEnumerator e(ea, ex, ex0, r);
    BigInt n_prev = 0, rho_t = t.rho0, scanned = 0;
    std::vector<std::pair<BigInt, BigInt>> shift_cache;  // gap -> gap*A mod D
    while (true) {
        auto n = e.next(horizon);
        if (!n) break;
        if (++scanned > max_entries)
            throw ResourceError("hit_torus2: entry enumeration budget of " +
                                max_entries.str() + " entries exceeded");
        BigInt g = *n - n_prev;
        n_prev = *n;
        const BigInt* sh = nullptr;
        for (const auto& [cg, cs] : shift_cache)
            if (cg == g) {
                sh = &cs;
                break;
            }
        if (!sh) {
            shift_cache.emplace_back(g, mod_floor(g * t.A, t.D));
            sh = &shift_cache.back().second;
        }
        rho_t += *sh;
        if (rho_t >= t.D) rho_t -= t.D;
        if (rho_t <= t.len) {
            rec.tau = *n;
            break;
        }
    }

    if (rec.tau) {
        // Product bound: the torus hit cannot precede either coordinate hit.
        auto t1 = hit_circle(a1, CirclePoint(x.c[0]), CirclePoint(x0.c[0]), r,
                             *rec.tau);
        auto t2 = hit_circle(a2, CirclePoint(x.c[1]), CirclePoint(x0.c[1]), r,
                             *rec.tau);
        if (!t1.found() || !t2.found())
            throw std::logic_error("hit_torus2: product bound violated");
    }
    return rec;
}

HittingRecord hit_torus2(const ContinuedFraction& a1,
                         const ContinuedFraction& a2, const TorusPoint& x,
                         const TorusPoint& x0, const Rational& r,
                         const BigInt& horizon, const BigInt& max_entries) {
    check_horizon(a1, horizon, r);
    check_horizon(a2, horizon, r);
    return hit_torus2(frac(value(a1)), frac(value(a2)), x, x0, r, horizon,
                      max_entries);
}

HittingRecord recurrence_time(const Rational& alpha, const CirclePoint& x,
                              const Rational& r, const BigInt& horizon) {
    return hit_circle(alpha, x, x, r, horizon);
}

HittingRecord recurrence_time(const ContinuedFraction& alpha,
                              const CirclePoint& x, const Rational& r,
                              const BigInt& horizon) {
    check_horizon(alpha, horizon, r);
    return recurrence_time(frac(value(alpha)), x, r, horizon);
}

std::vector<Rational> d_n_sequence(const Rational& alpha, const CirclePoint& x,
                                   const CirclePoint& x0, long n_max) {
    if (n_max < 1) throw ConfigError("d_n_sequence: n_max must be >= 1");
    BigInt D = lcm(denominator(alpha), denominator(x.v));
    D = lcm(D, denominator(x0.v));
    BigInt A = scale_to(frac(alpha), D);
    BigInt rho = mod_floor(scale_to(x.v, D) - scale_to(x0.v, D), D);
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(n_max));
    Rational best;
    for (long n = 1; n <= n_max; ++n) {
        rho += A;
        if (rho >= D) rho -= D;
        Rational d(std::min(rho, BigInt(D - rho)), D);
        best = (n == 1) ? d : std::min(best, d);
        out.push_back(best);
    }
    return out;
}

std::vector<Rational> d_n_sequence(const ContinuedFraction& alpha,
                                   const CirclePoint& x, const CirclePoint& x0,
                                   long n_max) {
    auto out = d_n_sequence(frac(value(alpha)), x, x0, n_max);
    // The truncation must resolve the finest distance actually reached.
    if (out.back() == 0)
        throw HorizonError("d_n_sequence: truncation hit exactly; distances "
                           "below its resolution");
    check_horizon(alpha, BigInt(n_max), out.back());
    return out;
}

std::vector<Rational> d_n_sequence_torus2(const Rational& a1,
                                          const Rational& a2,
                                          const TorusPoint& x,
                                          const TorusPoint& x0, long n_max) {
    if (x.dim() != 2 || x0.dim() != 2)
        throw ConfigError("d_n_sequence_torus2 needs 2-dimensional points");
    if (n_max < 1) throw ConfigError("d_n_sequence_torus2: n_max must be >= 1");
    struct Coord {
        BigInt D, A, rho;
    } co[2];
    for (int i = 0; i < 2; ++i) {
        const Rational& a = i == 0 ? a1 : a2;
        BigInt D = lcm(denominator(a), denominator(x.c[i]));
        D = lcm(D, denominator(x0.c[i]));
        co[i].D = D;
        co[i].A = scale_to(frac(a), D);
        co[i].rho = mod_floor(scale_to(x.c[i], D) - scale_to(x0.c[i], D), D);
    }
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(n_max));
    Rational best;
    for (long n = 1; n <= n_max; ++n) {
        Rational d = 0;
        for (auto& cc : co) {
            cc.rho += cc.A;
            if (cc.rho >= cc.D) cc.rho -= cc.D;
            d = std::max(d, Rational(std::min(cc.rho, BigInt(cc.D - cc.rho)),
                                     cc.D));
        }
        best = (n == 1) ? d : std::min(best, d);
        out.push_back(best);
    }
    return out;
}

}  // namespace hitlab
