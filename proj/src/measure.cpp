#include "hitlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hitlab {

namespace {

Rational exact_from_double(double v) {
    return Rational(v);  // doubles are dyadic; the conversion is exact
}

// Shared window data for level n of the Borel-Cantelli schedule, in
// 2r-space. M is an exact small integer; lo/hi/N are certified intervals.
struct WindowData {
    BigInt M;
    Ival lo, hi, N;
};

WindowData window_data(const IntertwinedPair& pair, double beta, int n,
                       bool primed, mpfr_prec_t prec = 256) {
    const ContinuedFraction& self = primed ? pair.alpha_prime : pair.alpha;
    const ContinuedFraction& other = primed ? pair.alpha : pair.alpha_prime;
    const std::size_t un = static_cast<std::size_t>(n);
    const double inv_beta = 1.0 / beta;
    WindowData w;
    w.M = n;
    if (!primed) {
        // I_n: [ n ||q_n a||^{1/b}, (n-1) ||q'_{n-1} a'||^{1/b} ],
        // N_n = (1/(n-1)) ||q_{n-1} a|| / ||q'_{n-1} a'||^{1/b}
        Rational norm_n = norm_q_alpha(self, un);
        Rational norm_prev = norm_q_alpha(self, un - 1);
        Rational other_prev = norm_q_alpha(other, un - 1);
        Ival pow_other = pow_interval(other_prev, inv_beta, prec);
        w.lo = Ival::exact(BigInt(n), prec) *
               pow_interval(norm_n, inv_beta, prec);
        w.hi = Ival::exact(BigInt(n - 1), prec) * pow_other;
        w.N = Ival::exact(norm_prev, prec) /
              (Ival::exact(BigInt(n - 1), prec) * pow_other);
    } else {
        // I'_n: [ n ||q'_n a'||^{1/b}, n ||q_n a||^{1/b} ],
        // N'_n = (1/n) ||q'_{n-1} a'|| / ||q_n a||^{1/b}
        Rational norm_n = norm_q_alpha(self, un);
        Rational norm_prev = norm_q_alpha(self, un - 1);
        Rational other_n = norm_q_alpha(other, un);
        Ival pow_other = pow_interval(other_n, inv_beta, prec);
        w.lo = Ival::exact(BigInt(n), prec) *
               pow_interval(norm_n, inv_beta, prec);
        w.hi = Ival::exact(BigInt(n), prec) * pow_other;
        w.N = Ival::exact(norm_prev, prec) /
              (Ival::exact(BigInt(n), prec) * pow_other);
    }
    return w;
}

WindowEntry make_entry(const WindowData& w, int n, bool primed) {
    WindowEntry e;
    e.level = n;
    e.primed = primed;
    e.M = static_cast<double>(n);
    e.N = w.N.mid();
    e.lo_upper = w.lo.upper();
    e.hi_lower = w.hi.lower();
    e.nonempty = e.lo_upper <= e.hi_lower;
    e.N_at_least_one = w.N.lower() >= 1;
    if (e.nonempty && e.lo_upper > 0)
        e.coverage_ratio =
            std::exp(log_rational(e.hi_lower) - log_rational(e.lo_upper));
    return e;
}

}  // namespace

std::size_t locate_window(const ContinuedFraction& alpha, const Rational& r) {
    if (alpha.depth() < 3)
        throw DepthError("locate_window: need depth >= 3");
    Rational two_r = 2 * r;
    if (two_r > norm_q_alpha(alpha, 0))
        throw DepthError("locate_window: radius above the first window");
    for (std::size_t n = 1; n + 2 <= alpha.depth(); ++n)
        if (norm_q_alpha(alpha, n) < two_r && two_r <= norm_q_alpha(alpha, n - 1))
            return n;
    throw DepthError("locate_window: radius below the deepest window");
}

KeyLemmaQuery make_key_lemma_query(const ContinuedFraction& alpha, double beta,
                                   double M, double N, std::size_t n,
                                   const Rational& r) {
    if (beta < 1 || M < 1 || N < 1)
        throw ConfigError("key lemma needs beta, M, N >= 1");
    if (n < 1 || n + 2 > alpha.depth())
        throw DepthError("key lemma window index out of depth");
    Rational two_r = 2 * r;
    Rational norm_n = norm_q_alpha(alpha, n);
    Rational norm_prev = norm_q_alpha(alpha, n - 1);
    // M ||q_n a||^{1/beta} <= 2r, certified against the upper bound
    Ival lhs = Ival::exact(exact_from_double(M)) *
               pow_interval(norm_n, 1.0 / beta);
    if (!(lhs.upper() <= two_r))
        throw ConfigError("key lemma window: lower condition not certified");
    // 2r <= (1/N) ||q_{n-1} a||, exact (N is a dyadic rational)
    if (!(two_r * exact_from_double(N) <= norm_prev))
        throw ConfigError("key lemma window: upper condition fails");
    return {beta, M, N, n, r};
}

ArcUnion level_set(const Rational& alpha, const Rational& x0,
                   const Rational& r, const BigInt& k) {
    if (k < 1) throw ConfigError("level_set: k must be >= 1");
    std::vector<Rational> centers;
    Rational c = x0;
    for (BigInt j = 1; j < k; ++j) {
        c = frac(c - alpha);
        centers.push_back(c);
    }
    c = frac(c - alpha);
    return ArcUnion::ball(c, r).subtract(
        ArcUnion::union_of_balls(centers, r));
}

ArcUnion level_set(const ContinuedFraction& alpha, const Rational& x0,
                   const Rational& r, const BigInt& k) {
    check_horizon(alpha, k, r);
    return level_set(frac(value(alpha)), x0, r, k);
}

Rational tail_measure(const Rational& alpha, const Rational& x0,
                      const Rational& r, const BigInt& K) {
    if (K < 1) throw ConfigError("tail_measure: K must be >= 1");
    if (r <= 0 || r >= Rational(1, 2))
        throw ConfigError("ball radius must lie strictly between 0 and 1/2");
    BigInt M = K - 1;
    if (M == 0) return 0;
    if (M <= 2048) {
        std::vector<Rational> centers;
        Rational c = x0;
        for (BigInt j = 1; j <= M; ++j) {
            c = frac(c - alpha);
            centers.push_back(c);
        }
        return ArcUnion::union_of_balls(centers, r).measure();
    }
    return union_measure_from_gaps(three_gap(-alpha, M), r);
}

Rational tail_measure(const ContinuedFraction& alpha, const Rational& x0,
                      const Rational& r, const BigInt& K) {
    check_horizon(alpha, K, r);
    return tail_measure(frac(value(alpha)), x0, r, K);
}

BigInt key_lemma_threshold(const Rational& r, double beta) {
    Rational base = 2 * r;
    if (base <= 0 || base >= 1)
        throw ConfigError("key_lemma_threshold: need 0 < 2r < 1");
    Rational x = 1 / base;
    // exact path for dyadic exponents beta = k / 2^j
    double g = beta;
    int j = 0;
    while (j <= 6 && g != std::floor(g)) {
        g *= 2;
        ++j;
    }
    if (j <= 6 && g == std::floor(g) && g >= 1 && g < 1e15) {
        unsigned long k = static_cast<unsigned long>(g);
        BigInt pn = pow(numerator(x), static_cast<unsigned>(k));
        BigInt pd = pow(denominator(x), static_cast<unsigned>(k));
        BigInt m = pn / pd;
        for (int t = 0; t < j; ++t) m = sqrt(m);
        auto at_least = [&](const BigInt& mm) {
            BigInt w = mm;
            for (int t = 0; t < j; ++t) w = w * w;
            return w * pd >= pn;
        };
        while (!at_least(m)) ++m;
        while (m > 1 && at_least(m - 1)) --m;
        return m;
    }
    for (mpfr_prec_t prec = 256; prec <= (1 << 15); prec *= 2) {
        auto c = pow_interval(x, beta, prec).ceil_certified();
        if (c) return *c;
    }
    throw ResourceError("key_lemma_threshold: could not certify the ceiling");
}

KeyLemmaResult check_key_lemma(const ContinuedFraction& alpha,
                               const KeyLemmaQuery& query) {
    KeyLemmaResult res;
    res.K = key_lemma_threshold(query.r, query.beta);
    res.lhs = tail_measure(alpha, Rational(0), query.r, res.K);
    Ival rhs = Ival::exact(exact_from_double(query.N)).inv() +
               pow_interval(exact_from_double(query.M), query.beta).inv();
    res.rhs_lower = rhs.lower();
    res.holds = res.lhs <= res.rhs_lower;
    return res;
}

WindowScheduleReport window_schedule(const IntertwinedPair& pair, double beta,
                                     int max_level) {
    if (pair.regime != PairRegime::power)
        throw ConfigError("window_schedule: power-regime pair required");
    if (!(beta >= 1.0) || !(beta < pair.gamma))
        throw ConfigError("window_schedule: need 1 <= beta < gamma");
    WindowScheduleReport rep;
    rep.all_nonempty = true;
    const std::size_t da = pair.alpha.depth(), dp = pair.alpha_prime.depth();
    for (int n = 2; n <= max_level; ++n) {
        const std::size_t un = static_cast<std::size_t>(n);
        if (un + 2 > da || un + 2 > dp) break;  // norms unavailable
        for (bool primed : {false, true}) {
            auto e = make_entry(window_data(pair, beta, n, primed), n, primed);
            rep.all_nonempty = rep.all_nonempty && e.nonempty;
            rep.windows.push_back(std::move(e));
        }
    }
    return rep;
}

BorelCantelliReport borel_cantelli_report(const IntertwinedPair& pair,
                                          double beta, int max_level) {
    auto schedule = window_schedule(pair, beta, max_level);
    BorelCantelliReport rep;
    rep.beta = beta;
    rep.all_bounded = true;

    // the pair truncations are fixed across all radii; evaluate them once
    const Rational val_a = frac(value(pair.alpha));
    const Rational val_ap = frac(value(pair.alpha_prime));

    Ival c_one = (Ival::exact(BigInt(1)) - exp_interval(-1.0)).inv();
    Ival c_beta = (Ival::exact(BigInt(1)) - exp_interval(-beta)).inv();
    Ival c_gamma = (Ival::exact(BigInt(1)) - exp_interval(-pair.gamma)).inv();

    Rational running = 0;
    for (const auto& w : schedule.windows) {
        BorelCantelliRow row;
        row.window = w;
        row.degenerate = !w.N_at_least_one;
        if (w.nonempty && w.lo_upper > 0) {
            // radii r_i = e^{-i} (rationalized) with 2 r_i inside the window
            long i_min = static_cast<long>(
                std::ceil(-(log_rational(w.hi_lower) - std::log(2.0)))) - 1;
            long i_max = static_cast<long>(
                std::floor(-(log_rational(w.lo_upper) - std::log(2.0)))) + 1;
            for (long i = std::max(1L, i_min); i <= i_max; ++i) {
                // dyadic approximations of e^{-i} keep the exact sums over
                // many radii on a small common denominator
                Rational r =
                    dyadic_round(exp_interval(-static_cast<double>(i)));
                Rational two_r = 2 * r;
                if (two_r < w.lo_upper || two_r > w.hi_lower) continue;
                BigInt K = key_lemma_threshold(r, beta);
                check_horizon(pair.alpha, K, r);
                check_horizon(pair.alpha_prime, K, r);
                Rational t1 = tail_measure(val_a, Rational(0), r, K);
                Rational t2 = tail_measure(val_ap, Rational(0), r, K);
                row.radii.push_back(r);
                row.sum_measure += std::min(t1, t2);
            }
            row.radius_count = static_cast<int>(row.radii.size());
        }
        auto wd = window_data(pair, beta, w.level, w.primed);
        Ival bound_beta = wd.N.inv() * c_one +
                          pow_interval(Rational(wd.M), beta).inv() * c_beta;
        Ival bound_gamma =
            wd.N.inv() * c_one +
            pow_interval(Rational(wd.M), pair.gamma).inv() * c_gamma;
        row.series_bound_beta = bound_beta.lower();
        row.series_bound_gamma = bound_gamma.lower();
        row.bounded = !row.degenerate &&
                      row.sum_measure <= row.series_bound_beta;
        if (!row.degenerate) rep.all_bounded = rep.all_bounded && row.bounded;
        running += row.sum_measure;
        rep.partial_sums.push_back(running);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::vector<double> local_dimension_probe(int d,
                                          const std::vector<Rational>& radii) {
    if (d < 1 || d > 3) throw ConfigError("local_dimension_probe: d in 1..3");
    std::vector<double> out;
    out.reserve(radii.size());
    for (const auto& r : radii) {
        if (r <= 0 || r >= Rational(1, 2))
            throw ConfigError("radius must lie strictly between 0 and 1/2");
        out.push_back(d * log_rational(2 * r) / log_rational(r));
    }
    return out;
}

}  // namespace hitlab
