#include "hitlab/indicator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hitlab {

namespace {

struct ScheduleEntry {
    int n = 0;
    double ratio = 0.0;
    bool censored = false;
};

void validate_schedule(const RadiusSchedule& s, int tail_window) {
    if (!(s.base > 1.0))
        throw ConfigError("radius schedule: base must exceed 1");
    if (s.n_min < 1 || s.n_min > s.n_max)
        throw ConfigError("radius schedule: need 1 <= n_min <= n_max");
    if (tail_window < 1) throw ConfigError("tail_window must be >= 1");
}

}  // namespace

Rational schedule_radius(const RadiusSchedule& schedule, int n) {
    if (!(schedule.base > 1.0))
        throw ConfigError("radius schedule: base must exceed 1");
    if (n < 1) throw ConfigError("radius schedule: need n >= 1");
    Rational r = dyadic_round(
        pow_interval(Rational(schedule.base), -static_cast<double>(n)));
    if (r >= Rational(1, 2))
        throw ConfigError("radius schedule: radius must be below 1/2");
    return r;
}

IndicatorEstimate estimate_indicators(const HitSource& hits,
                                      const RadiusSchedule& schedule,
                                      int tail_window) {
    validate_schedule(schedule, tail_window);
    IndicatorEstimate est;
    est.schedule = schedule;
    std::vector<ScheduleEntry> entries;
    for (int n = schedule.n_min; n <= schedule.n_max; ++n) {
        Rational r = schedule_radius(schedule, n);
        HittingRecord rec = hits(r);
        double neg_log_r = -log_rational(r);
        ScheduleEntry e;
        e.n = n;
        if (rec.found()) {
            e.ratio = log_big(*rec.tau) / neg_log_r;
        } else {
            // tau exceeds the horizon, so log(horizon)/(-log r) bounds the
            // true ratio from below
            e.ratio =
                log_big(std::max(rec.horizon, BigInt(1))) / neg_log_r;
            e.censored = true;
            ++est.censored_count;
        }
        entries.push_back(e);
        if (!e.censored) est.ratios.emplace_back(e.n, e.ratio);
    }
    if (est.ratios.empty())
        throw ResourceError(
            "estimate_indicators: every schedule entry censored");

    // R_low: min over the last tail_window entries, censored lower bounds
    // included; R_up: max over the last tail_window non-censored ratios.
    std::size_t lo_from =
        entries.size() > static_cast<std::size_t>(tail_window)
            ? entries.size() - static_cast<std::size_t>(tail_window)
            : 0;
    est.R_low = std::numeric_limits<double>::infinity();
    for (std::size_t i = lo_from; i < entries.size(); ++i)
        est.R_low = std::min(est.R_low, entries[i].ratio);
    std::size_t up_from =
        est.ratios.size() > static_cast<std::size_t>(tail_window)
            ? est.ratios.size() - static_cast<std::size_t>(tail_window)
            : 0;
    est.R_up = -std::numeric_limits<double>::infinity();
    for (std::size_t i = up_from; i < est.ratios.size(); ++i)
        est.R_up = std::max(est.R_up, est.ratios[i].second);
    return est;
}

IndicatorEstimate circle_indicators(const Rational& alpha, const CirclePoint& x,
                                    const CirclePoint& x0,
                                    const RadiusSchedule& schedule,
                                    const BigInt& horizon, int tail_window) {
    return estimate_indicators(
        [&](const Rational& r) { return hit_circle(alpha, x, x0, r, horizon); },
        schedule, tail_window);
}

IndicatorEstimate circle_indicators(const ContinuedFraction& alpha,
                                    const CirclePoint& x, const CirclePoint& x0,
                                    const RadiusSchedule& schedule,
                                    const BigInt& horizon, int tail_window) {
    return estimate_indicators(
        [&](const Rational& r) { return hit_circle(alpha, x, x0, r, horizon); },
        schedule, tail_window);
}

IndicatorEstimate torus2_indicators(const ContinuedFraction& a1,
                                    const ContinuedFraction& a2,
                                    const TorusPoint& x, const TorusPoint& x0,
                                    const RadiusSchedule& schedule,
                                    const BigInt& horizon, int tail_window) {
    return estimate_indicators(
        [&](const Rational& r) {
            return hit_torus2(a1, a2, x, x0, r, horizon);
        },
        schedule, tail_window);
}

IndicatorEstimate recurrence_indicators(const Rational& alpha,
                                        const CirclePoint& x,
                                        const RadiusSchedule& schedule,
                                        const BigInt& horizon,
                                        int tail_window) {
    return estimate_indicators(
        [&](const Rational& r) {
            return recurrence_time(alpha, x, r, horizon);
        },
        schedule, tail_window);
}

IndicatorEstimate recurrence_indicators(const ContinuedFraction& alpha,
                                        const CirclePoint& x,
                                        const RadiusSchedule& schedule,
                                        const BigInt& horizon,
                                        int tail_window) {
    return estimate_indicators(
        [&](const Rational& r) {
            return recurrence_time(alpha, x, r, horizon);
        },
        schedule, tail_window);
}

LoglawReport loglaw_crosscheck(const Rational& alpha, const CirclePoint& x,
                               const CirclePoint& x0, long n_max) {
    if (n_max < 2) throw ConfigError("loglaw_crosscheck: need n_max >= 2");
    LoglawReport rep;

    // literal orbit walk: record every drop of d_n
    Rational c = x.v;
    Rational best;
    bool have = false;
    for (long n = 1; n <= n_max; ++n) {
        c = frac(c + alpha);
        Rational d = circle_dist(c, x0.v);
        if (!have || d < best) {
            best = d;
            have = true;
            rep.record_times.push_back(BigInt(n));
            rep.record_dists.push_back(d);
            if (d == 0) break;  // orbit lands exactly on x0
        }
    }

    // solver side: for radii strictly between records, tau must equal the
    // later record time exactly
    rep.tau_matches = true;
    for (std::size_t k = 1; k < rep.record_times.size(); ++k) {
        // a radius slightly above the record value (capped midway to the
        // previous record): tau there must equal the record time, and the
        // two ratio curves are compared at nearly the same scale
        Rational r_mid =
            rep.record_dists[k] == 0
                ? Rational(rep.record_dists[k - 1] / 2)
                : std::min(
                      Rational(rep.record_dists[k] * Rational(9, 8)),
                      Rational((rep.record_dists[k - 1] + rep.record_dists[k]) /
                               2));
        auto rec = hit_circle(alpha, x, x0, r_mid, BigInt(n_max));
        bool ok = rec.found() && *rec.tau == rep.record_times[k];
        rep.tau_matches = rep.tau_matches && ok;
        if (ok && rep.record_dists[k] > 0 && rep.record_times[k] >= 2) {
            rep.R_tau = log_big(*rec.tau) / (-log_rational(r_mid));
            rep.R_d =
                log_big(rep.record_times[k]) / (-log_rational(rep.record_dists[k]));
        }
    }
    rep.ratio_gap = std::abs(rep.R_tau - rep.R_d);
    return rep;
}

LoglawReport loglaw_crosscheck_torus2(const ContinuedFraction& a1,
                                      const ContinuedFraction& a2,
                                      const TorusPoint& x, const TorusPoint& x0,
                                      const BigInt& horizon) {
    LoglawReport rep;
    const Rational v1 = frac(value(a1)), v2 = frac(value(a2));
    Rational r(1, 4);
    rep.tau_matches = true;
    while (true) {
        auto rec = hit_torus2(a1, a2, x, x0, r, horizon);
        if (!rec.found()) break;
        const BigInt& n = *rec.tau;
        TorusPoint y({frac(x.c[0] + Rational(n) * v1),
                      frac(x.c[1] + Rational(n) * v2)});
        Rational v = sup_dist(y, x0);
        // the solver's claimed hit, re-verified by direct evaluation
        rep.tau_matches = rep.tau_matches && v < r;
        rep.record_times.push_back(n);
        rep.record_dists.push_back(v);
        if (v == 0) break;
        if (v > 0 && n >= 2) {
            rep.R_tau = log_big(n) / (-log_rational(r));
            rep.R_d = log_big(n) / (-log_rational(v));
        }
        // halving keeps the number of solver calls logarithmic in the
        // final depth; each hit is still an exact record of d_n (all
        // earlier distances are >= the radius queried)
        r = v / 2;
    }
    rep.ratio_gap = std::abs(rep.R_tau - rep.R_d);
    return rep;
}

ExponentIdentityReport exponent_identities(const std::vector<double>& f) {
    const std::size_t N = f.size();
    if (N < 4) throw ConfigError("exponent_identities: need >= 4 samples");
    for (double v : f)
        if (!(v > 0))
            throw ConfigError("exponent_identities: samples must be positive");
    // tail window: trailing half of the samples, n >= 2
    std::size_t from = std::max<std::size_t>(2, N / 2);
    std::vector<double> ln, lf;
    for (std::size_t n = from; n <= N; ++n) {
        ln.push_back(std::log(static_cast<double>(n)));
        lf.push_back(std::log(f[n - 1]));
    }

    ExponentIdentityReport rep;
    rep.limsup_exponent = -std::numeric_limits<double>::infinity();
    rep.liminf_exponent = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ln.size(); ++i) {
        double ratio = -lf[i] / ln[i];
        rep.limsup_exponent = std::max(rep.limsup_exponent, ratio);
        rep.liminf_exponent = std::min(rep.liminf_exponent, ratio);
    }

    // grid search: largest b (step 1/128) for which n^b f(n) still drops
    // below 1 on the tail (liminf side) / stays below 1 on the tail (limsup
    // side); both thresholds are monotone in b
    const double step = 1.0 / 128.0;
    const double b_cap = std::max(rep.limsup_exponent, 0.0) + 2.0;
    double b = 0.0;
    for (double t = 0.0; t <= b_cap; t += step) {
        double mn = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ln.size(); ++i)
            mn = std::min(mn, t * ln[i] + lf[i]);
        if (mn < 0) b = t;
    }
    rep.beta_sup_liminf = b;
    b = 0.0;
    for (double t = 0.0; t <= b_cap; t += step) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ln.size(); ++i)
            mx = std::max(mx, t * ln[i] + lf[i]);
        if (mx < 0) b = t;
    }
    rep.beta_sup_limsup = b;
    return rep;
}

MinDistExponentReport min_dist_exponent_check(const Rational& alpha,
                                              const CirclePoint& x,
                                              const CirclePoint& x0,
                                              long n_max) {
    if (n_max < 2)
        throw ConfigError("min_dist_exponent_check: need n_max >= 2");
    MinDistExponentReport rep;
    // both curves run over n = 2..n_max; the n = 1 distance is excluded
    // from the running minimum too (log 1 = 0 leaves it no pointwise ratio,
    // and the identity needs the same index window on both sides)
    Rational c = frac(x.v + alpha);
    Rational d;
    bool have = false;
    for (long n = 2; n <= n_max; ++n) {
        c = frac(c + alpha);
        Rational s = circle_dist(c, x0.v);
        if (!have || s < d) {
            d = s;
            have = true;
        }
        if (s == 0) {  // both exponents are +infinity from here on
            rep.from_min_dist = std::numeric_limits<double>::infinity();
            rep.from_pointwise = rep.from_min_dist;
            rep.equal = true;
            return rep;
        }
        double lg = std::log(static_cast<double>(n));
        rep.from_pointwise =
            std::max(rep.from_pointwise, -log_rational(s) / lg);
        rep.from_min_dist =
            std::max(rep.from_min_dist, -log_rational(d) / lg);
    }
    rep.equal = rep.from_min_dist == rep.from_pointwise;
    return rep;
}

}  // namespace hitlab
