#include "hitlab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hitlab/rng.hpp"

namespace hitlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long kStepBudget = 50'000'000;

void validate_geometry(const TranslationFlow& flow,
                       const std::vector<double>& x,
                       const std::vector<double>& x0) {
    const std::size_t d = flow.direction.size();
    if (d < 2 || d > 3)
        throw ConfigError("flow: direction must have 2 or 3 components");
    if (x.size() != d || x0.size() != d)
        throw ConfigError("flow: point dimension must match the direction");
}

void validate_radius(double r) {
    if (!(r > 0.0) || !(r < 0.5))
        throw ConfigError("flow: radius must lie strictly between 0 and 1/2");
}

// Velocity field of the reparametrized flow.
std::vector<double> velocity(const TranslationFlow& flow,
                             const Reparametrization& speed,
                             const std::vector<double>& x) {
    double s = speed(x);
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = s * flow.direction[i];
    return v;
}

// One classical 4th-order step of length h from x (result not wrapped; the
// speed is 1-periodic so wrapping is only cosmetic between steps).
std::vector<double> rk4_step(const TranslationFlow& flow,
                             const Reparametrization& speed,
                             const std::vector<double>& x, double h) {
    const std::size_t d = x.size();
    std::vector<double> k1 = velocity(flow, speed, x);
    std::vector<double> y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + 0.5 * h * k1[i];
    std::vector<double> k2 = velocity(flow, speed, y);
    for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + 0.5 * h * k2[i];
    std::vector<double> k3 = velocity(flow, speed, y);
    for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + h * k3[i];
    std::vector<double> k4 = velocity(flow, speed, y);
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i)
        out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

// A priori step size: with V = sup |velocity| (sup norm) and L a bound on
// the Lipschitz constant of the velocity field, the local error of one
// 4th-order step is <= c * V * (L h)^4 * h, so the accumulated error over
// t_max stays below eps once t_max * V * (L h)^4 <= eps (c absorbed by a
// safety factor of 10).
double choose_step(const TranslationFlow& flow, const Reparametrization& speed,
                   double eps, double t_max) {
    double dmax = 0.0;
    for (double di : flow.direction) dmax = std::max(dmax, std::abs(di));
    const double V = speed.max_upper() * dmax;
    double grad = 0.0;  // bound on |grad of the trig polynomial|
    for (const TrigTerm& t : speed.terms()) {
        double fmax = 0.0;
        for (int k : t.freq) fmax = std::max(fmax, std::abs((double)k));
        grad += kTwoPi * fmax *
                (std::abs(t.cos_coef) + std::abs(t.sin_coef));
    }
    const double L = std::max(grad * dmax, 1e-12);
    // solve 10 * t_max * V * (L h)^4 = eps for h
    const double h = std::pow(eps / (10.0 * t_max * V), 0.25) / L;
    return std::min({h, 0.05 / std::max(V, 1e-12), 0.05});
}

bool inside_ball(const std::vector<double>& x, const std::vector<double>& x0,
                 double r) {
    return sup_dist_d(x, x0) < r;
}

}  // namespace

Reparametrization::Reparametrization(double c0, std::vector<TrigTerm> terms)
    : c0_(c0), terms_(std::move(terms)) {
    double amp = 0.0;
    for (const TrigTerm& t : terms_) {
        if (t.freq.empty() || t.freq.size() > 3)
            throw ConfigError("speed: term frequency must have 1..3 indices");
        amp += std::abs(t.cos_coef) + std::abs(t.sin_coef);
    }
    min_lower_ = c0_ - amp;
    max_upper_ = c0_ + amp;
    if (!(min_lower_ > 0.0))
        throw ConfigError(
            "speed: coefficient bound does not certify positivity");
}

double Reparametrization::operator()(const std::vector<double>& x) const {
    double v = c0_;
    for (const TrigTerm& t : terms_) {
        double phase = 0.0;
        for (std::size_t i = 0; i < t.freq.size() && i < x.size(); ++i)
            phase += t.freq[i] * x[i];
        phase *= kTwoPi;
        v += t.cos_coef * std::cos(phase) + t.sin_coef * std::sin(phase);
    }
    return v;
}

double Reparametrization::certified_C() const {
    return std::max({max_upper_, 1.0 / min_lower_, 1.0});
}

Reparametrization Reparametrization::scaled(double s) const {
    if (!(s > 0.0)) throw ConfigError("speed: scale factor must be positive");
    std::vector<TrigTerm> t = terms_;
    for (TrigTerm& term : t) {
        term.cos_coef *= s;
        term.sin_coef *= s;
    }
    return Reparametrization(c0_ * s, std::move(t));
}

double wrap_unit(double v) {
    v -= std::floor(v);
    if (v >= 1.0) v = 0.0;  // floor rounding at the seam
    return v;
}

double circle_dist_d(double a, double b) {
    double d = std::abs(wrap_unit(a) - wrap_unit(b));
    return std::min(d, 1.0 - d);
}

double sup_dist_d(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, circle_dist_d(a[i], b[i]));
    return m;
}

std::optional<double> flow_hit(const TranslationFlow& flow,
                               const std::vector<double>& x,
                               const std::vector<double>& x0, double r,
                               double t_max) {
    validate_geometry(flow, x, x0);
    validate_radius(r);
    if (!(t_max > 0.0)) throw ConfigError("flow: t_max must be positive");

    // Per moving coordinate: |x_i + t d_i - x0_i| < r (mod 1) holds exactly
    // on the open windows (tc + k p - w, tc + k p + w), p = 1/|d_i|,
    // w = r/|d_i|, tc the first nonnegative solution of t d_i = x0_i - x_i
    // mod 1. Stored as (tc, p, w).
    struct Window {
        double tc, p, w;
    };
    std::vector<Window> windows;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double di = flow.direction[i];
        if (di == 0.0) {
            if (circle_dist_d(x[i], x0[i]) >= r)
                throw ConfigError(
                    "flow: frozen coordinate never reaches the target");
            continue;  // coordinate satisfied for all t
        }
        const double p = 1.0 / std::abs(di);
        // t d = delta mod 1  =>  t = delta/d mod p, reduced to [0, p)
        double t0 = std::fmod((x0[i] - x[i]) / di, p);
        if (t0 < 0.0) t0 += p;
        windows.push_back(Window{t0, p, r / std::abs(di)});
    }
    if (windows.empty())  // every coordinate frozen and already inside
        return 0.0;

    // Sweep: advance t to the start of the next window of any violated
    // coordinate; when no coordinate objects, t is the infimum of the
    // intersection (window boundaries count: the infimum of an open window
    // is its closure point).
    double t = 0.0;
    const double slack = 1e-13 * std::max(1.0, t_max);
    for (long iter = 0; iter < kStepBudget; ++iter) {
        bool moved = false;
        for (const Window& win : windows) {
            // offset of t into its current period, measured from the
            // window start tc - w
            double u = std::fmod(t - (win.tc - win.w), win.p);
            if (u < 0.0) u += win.p;
            // inside (or on a boundary); u near p is the window start seen
            // from below through fmod rounding -- accepting it keeps the
            // sweep from stalling on sub-ulp jumps
            if (u <= 2.0 * win.w + slack || u >= win.p - slack) continue;
            t += win.p - u;  // jump to the next window start
            moved = true;
            break;
        }
        if (!moved) return t <= t_max ? std::optional<double>(t) : std::nullopt;
        if (t > t_max) return std::nullopt;
    }
    throw ResourceError("flow_hit: sweep iteration budget exceeded");
}

std::optional<double> reparam_flow_hit(const TranslationFlow& flow,
                                       const Reparametrization& speed,
                                       const std::vector<double>& x,
                                       const std::vector<double>& x0, double r,
                                       double t_max) {
    validate_geometry(flow, x, x0);
    validate_radius(r);
    if (!(t_max > 0.0)) throw ConfigError("flow: t_max must be positive");
    if (speed.is_constant()) {
        // exact time change: the orbit is the straight flow at speed c0
        auto t = flow_hit(flow, x, x0, r, t_max * speed.c0());
        if (!t) return std::nullopt;
        return *t / speed.c0();
    }

    const double h = choose_step(flow, speed, r / 100.0, t_max);
    const double steps_needed = t_max / h;
    if (steps_needed > static_cast<double>(kStepBudget))
        throw ResourceError("reparam_flow_hit: step budget exceeded");

    std::vector<double> cur = x;
    for (auto& c : cur) c = wrap_unit(c);
    if (inside_ball(cur, x0, r)) return 0.0;
    double t = 0.0;
    while (t < t_max) {
        const double step = std::min(h, t_max - t);
        std::vector<double> nxt = rk4_step(flow, speed, cur, step);
        if (inside_ball(nxt, x0, r)) {
            // refine the entry time within [0, step] by bisection on the
            // partial step from `cur`
            double lo = 0.0, hi = step;
            while (hi - lo > 1e-10) {
                double mid = 0.5 * (lo + hi);
                if (inside_ball(rk4_step(flow, speed, cur, mid), x0, r))
                    hi = mid;
                else
                    lo = mid;
            }
            return t + hi;
        }
        for (auto& c : nxt) c = wrap_unit(c);
        cur = std::move(nxt);
        t += step;
    }
    return std::nullopt;
}

std::vector<double> time1_map(const TranslationFlow& flow,
                              const Reparametrization& speed,
                              const std::vector<double>& x) {
    const std::size_t d = flow.direction.size();
    if (x.size() != d)
        throw ConfigError("flow: point dimension must match the direction");
    if (speed.is_constant()) {
        std::vector<double> y(d);
        for (std::size_t i = 0; i < d; ++i)
            y[i] = wrap_unit(x[i] + speed.c0() * flow.direction[i]);
        return y;
    }
    const double h = choose_step(flow, speed, 1e-10, 1.0);
    const long n = std::max(1L, static_cast<long>(std::ceil(1.0 / h)));
    const double step = 1.0 / static_cast<double>(n);
    std::vector<double> cur = x;
    for (long i = 0; i < n; ++i) {
        cur = rk4_step(flow, speed, cur, step);
        for (auto& c : cur) c = wrap_unit(c);
    }
    return cur;
}

std::optional<long> discrete_hit(const TranslationFlow& flow,
                                 const Reparametrization& speed,
                                 const std::vector<double>& x,
                                 const std::vector<double>& x0, double r,
                                 long n_max) {
    validate_geometry(flow, x, x0);
    validate_radius(r);
    if (n_max < 1) throw ConfigError("flow: n_max must be positive");
    std::vector<double> cur = x;
    for (long n = 1; n <= n_max; ++n) {
        cur = time1_map(flow, speed, cur);
        if (inside_ball(cur, x0, r)) return n;
    }
    return std::nullopt;
}

SectionReturn poincare_section(const TranslationFlow& flow,
                               const Reparametrization& speed, double c,
                               const std::vector<double>& x) {
    const std::size_t d = flow.direction.size();
    if (d < 2 || d > 3)
        throw ConfigError("flow: direction must have 2 or 3 components");
    if (x.size() != d)
        throw ConfigError("flow: point dimension must match the direction");
    if (!(flow.direction[0] > 0.0))
        throw ConfigError(
            "poincare_section: first direction component must be positive");

    c = wrap_unit(c);
    if (speed.is_constant()) {
        // x_1 moves at constant rate c0 * d_1: time to the next crossing is
        // gap / (c0 * d_1) with gap the forward distance from x_1 to c (a
        // full period when x starts on the section)
        double gap = wrap_unit(c - x[0]);
        if (gap == 0.0) gap = 1.0;
        const double t = gap / (speed.c0() * flow.direction[0]);
        SectionReturn out;
        out.return_time = t;
        out.point.resize(d);
        out.point[0] = c;
        for (std::size_t i = 1; i < d; ++i)
            out.point[i] =
                wrap_unit(x[i] + gap * flow.direction[i] / flow.direction[0]);
        return out;
    }

    // x_1 is strictly increasing (speed > 1/C, d_1 > 0): track its unwrapped
    // progress toward the next crossing and bisect the step containing it.
    const double h = choose_step(flow, speed, 1e-12, 1.0);
    double gap = wrap_unit(c - x[0]);
    if (gap < 1e-12) gap = 1.0;  // starting on (or at rounding distance of)
                                 // the section: full return
    std::vector<double> cur = x;
    double t = 0.0, progress = 0.0;
    for (long iter = 0; iter < kStepBudget; ++iter) {
        std::vector<double> nxt = rk4_step(flow, speed, cur, h);
        double adv = nxt[0] - cur[0];  // unwrapped: rk4_step does not wrap
        if (progress + adv >= gap) {
            double lo = 0.0, hi = h;
            while (hi - lo > 1e-10) {
                double mid = 0.5 * (lo + hi);
                std::vector<double> y = rk4_step(flow, speed, cur, mid);
                if (progress + (y[0] - cur[0]) >= gap)
                    hi = mid;
                else
                    lo = mid;
            }
            std::vector<double> y = rk4_step(flow, speed, cur, hi);
            SectionReturn out;
            out.return_time = t + hi;
            out.point.resize(d);
            out.point[0] = c;  // on the section by construction
            for (std::size_t i = 1; i < d; ++i) out.point[i] = wrap_unit(y[i]);
            return out;
        }
        progress += adv;
        t += h;
        for (auto& v : nxt) v = wrap_unit(v);
        cur = std::move(nxt);
    }
    throw ResourceError("poincare_section: step budget exceeded");
}

std::pair<double, double> invariant_measure_proxy(
    const TranslationFlow& flow, const Reparametrization& speed,
    const std::vector<double>& q_lo, const std::vector<double>& q_hi,
    int side, std::uint64_t seed) {
    const std::size_t d = flow.direction.size();
    if (q_lo.size() != d || q_hi.size() != d)
        throw ConfigError("flow: box dimension must match the direction");
    if (d != 2)
        throw ConfigError("invariant_measure_proxy: implemented for d = 2");
    if (side < 2) throw ConfigError("invariant_measure_proxy: side >= 2");

    auto in_box = [&](const std::vector<double>& p) {
        for (std::size_t i = 0; i < d; ++i)
            if (p[i] < q_lo[i] || p[i] >= q_hi[i]) return false;
        return true;
    };

    // Jittered grid: one uniform sample per cell of a side x side grid.
    // Stratification confines the sampling noise of the two indicator
    // integrals to the O(side) cells crossed by the box boundaries, which
    // is what makes a 1e-3 relative comparison feasible at ~1e5 samples.
    // Coarser time-1 integration than time1_map: 200 steps put the map
    // error near 1e-6, invisible next to the O(1/side) boundary cells,
    // and keep the whole proxy at ~2e7 integration steps.
    auto map_coarse = [&](std::vector<double> p) {
        if (speed.is_constant()) return time1_map(flow, speed, p);
        const double step = 1.0 / 200.0;
        for (int k = 0; k < 200; ++k) {
            p = rk4_step(flow, speed, p, step);
            for (auto& v : p) v = wrap_unit(v);
        }
        return p;
    };

    SplitMix64 rng(seed);
    const double cell = 1.0 / static_cast<double>(side);
    double mass_q = 0.0, mass_pre = 0.0;
    for (int i = 0; i < side; ++i) {
        for (int j = 0; j < side; ++j) {
            std::vector<double> p{(i + rng.next_double()) * cell,
                                  (j + rng.next_double()) * cell};
            const double w = 1.0 / speed(p);
            if (in_box(p)) mass_q += w;
            if (in_box(map_coarse(p))) mass_pre += w;
        }
    }
    const double norm = static_cast<double>(side) * side;
    return {mass_q / norm, mass_pre / norm};
}

}  // namespace hitlab
