#include "hitlab/corr.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "hitlab/rng.hpp"

namespace hitlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kGridBits = 16;  // 2^16 quadrature nodes in total

double freq_len(const std::vector<int>& k) {
    double s = 0.0;
    for (int v : k) s += static_cast<double>(v) * v;
    return std::sqrt(s);
}

bool freq_zero(const std::vector<int>& k) {
    return std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
}

// Fourier coefficients of a real trig polynomial, both +k and -k per term:
// a cos(2 pi k.x) + b sin(2 pi k.x) = c_k e^{2 pi i k.x} + conj, with
// c_k = (a - i b)/2.
std::map<std::vector<int>, std::complex<double>> fourier(
    const Observable& obs) {
    std::map<std::vector<int>, std::complex<double>> c;
    for (const TrigTerm& t : obs.terms()) {
        if (freq_zero(t.freq))
            throw ConfigError("observable: zero frequency belongs in the mean");
        std::vector<int> neg = t.freq;
        for (int& v : neg) v = -v;
        c[t.freq] += std::complex<double>(t.cos_coef / 2.0, -t.sin_coef / 2.0);
        c[neg] += std::complex<double>(t.cos_coef / 2.0, t.sin_coef / 2.0);
    }
    return c;
}

void check_pair(const MapSpec& map, const Observable& phi,
                const Observable& psi, long n) {
    if (n < 0) throw ConfigError("correlation: n must be nonnegative");
    const std::size_t d = map.dim();
    if (d < 1 || d > 3)
        throw ConfigError("correlation: system dimension must be 1..3");
    if (map.kind == SystemKind::rotation && map.alpha.empty())
        throw ConfigError("correlation: rotation needs a rotation vector");
    if (phi.dim() != d || psi.dim() != d)
        throw ConfigError(
            "correlation: observable dimension must match the system");
}

// int phi o T^n psi dx - int phi dx int psi dx by exact Fourier pairing.
double closed_form(const MapSpec& map, const Observable& phi,
                   const Observable& psi, long n) {
    auto cphi = fourier(phi), cpsi = fourier(psi);
    std::complex<double> sum = 0.0;
    for (const auto& [k, ck] : cphi) {
        std::vector<int> want(k.size());
        if (map.kind == SystemKind::rotation) {
            // int e^{2 pi i k.(x + n a)} e^{2 pi i m.x} pairs m = -k and
            // contributes the phase e^{2 pi i n k.a}
            for (std::size_t i = 0; i < k.size(); ++i) want[i] = -k[i];
            auto it = cpsi.find(want);
            if (it == cpsi.end()) continue;
            double phase = 0.0;
            for (std::size_t i = 0; i < k.size(); ++i)
                phase += static_cast<double>(k[i]) * map.alpha[i];
            phase *= kTwoPi * static_cast<double>(n);
            sum += ck * it->second *
                   std::complex<double>(std::cos(phase), std::sin(phase));
        } else {
            // phi(2^n x): frequency k maps to 2^n k, pairing m = -2^n k;
            // beyond 62 doublings no finite psi frequency can match
            if (n >= 62) continue;
            const long scale = 1L << n;
            bool overflow = false;
            for (std::size_t i = 0; i < k.size(); ++i) {
                long f = -scale * static_cast<long>(k[i]);
                if (f < std::numeric_limits<int>::min() ||
                    f > std::numeric_limits<int>::max())
                    overflow = true;
                else
                    want[i] = static_cast<int>(f);
            }
            if (overflow) continue;
            auto it = cpsi.find(want);
            if (it == cpsi.end()) continue;
            sum += ck * it->second;
        }
    }
    return sum.real();  // imaginary parts cancel in conjugate pairs
}

}  // namespace

Observable Observable::trig(std::size_t dim, double mean,
                            std::vector<TrigTerm> terms) {
    if (dim < 1 || dim > 3)
        throw ConfigError("observable: dimension must be 1..3");
    Observable o;
    o.dim_ = dim;
    o.is_trig_ = true;
    o.mean_ = mean;
    o.terms_ = std::move(terms);
    double amp = 0.0, lip = 0.0;
    for (const TrigTerm& t : o.terms_) {
        if (t.freq.size() != dim)
            throw ConfigError(
                "observable: term frequency length must equal the dimension");
        if (freq_zero(t.freq))
            throw ConfigError("observable: zero frequency belongs in the mean");
        const double a = std::abs(t.cos_coef) + std::abs(t.sin_coef);
        amp += a;
        lip += a * kTwoPi * freq_len(t.freq);
    }
    o.sup_ = std::abs(mean) + amp;  // certified upper bound
    o.lip_ = lip;
    return o;
}

Observable Observable::hat(double center, double halfwidth, double height,
                           bool mean_removed) {
    if (!(halfwidth > 0.0) || !(halfwidth < 0.5))
        throw ConfigError("observable: hat halfwidth must be in (0, 1/2)");
    if (!(height > 0.0))
        throw ConfigError("observable: hat height must be positive");
    Observable o;
    o.dim_ = 1;
    o.is_trig_ = false;
    const double raw_mean = height * halfwidth;  // triangle area
    const double offset = mean_removed ? raw_mean : 0.0;
    o.mean_ = raw_mean - offset;
    o.eval1_ = [center, halfwidth, height, offset](double x) {
        const double d = circle_dist_d(x, center);
        return (d < halfwidth ? height * (1.0 - d / halfwidth) : 0.0) - offset;
    };
    o.sup_ = std::max(height - offset, offset);
    o.lip_ = height / halfwidth;
    return o;
}

double Observable::operator()(const std::vector<double>& x) const {
    if (x.size() != dim_)
        throw ConfigError("observable: point dimension mismatch");
    if (!is_trig_) return eval1_(x[0]);
    double v = mean_;
    for (const TrigTerm& t : terms_) {
        double phase = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) phase += t.freq[i] * x[i];
        phase *= kTwoPi;
        v += t.cos_coef * std::cos(phase) + t.sin_coef * std::sin(phase);
    }
    return v;
}

CorrelationEntry correlation_quadrature(const MapSpec& map,
                                        const Observable& phi,
                                        const Observable& psi, long n) {
    check_pair(map, phi, psi, n);
    const std::size_t d = map.dim();
    if (d > 2)
        throw ConfigError(
            "correlation: quadrature fallback implemented for d <= 2");

    const long side = d == 1 ? (1L << kGridBits) : (1L << (kGridBits / 2));
    const double spacing = 1.0 / static_cast<double>(side);

    auto image = [&](std::vector<double> x) {
        if (map.kind == SystemKind::rotation) {
            for (std::size_t i = 0; i < d; ++i)
                x[i] = wrap_unit(x[i] + static_cast<double>(n) * map.alpha[i]);
        } else {
            for (long k = 0; k < n; ++k) x[0] = wrap_unit(2.0 * x[0]);
        }
        return x;
    };

    double s_cross = 0.0, s_phi = 0.0, s_psi = 0.0;
    long count = 0;
    std::vector<double> x(d);
    const long cells = d == 1 ? side : side * side;
    for (long c = 0; c < cells; ++c) {
        long rem = c;
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = (static_cast<double>(rem % side) + 0.5) * spacing;
            rem /= side;
        }
        const double pv = phi(image(x));
        const double qv = psi(x);
        const double fv = phi(x);
        s_cross += pv * qv;
        s_phi += fv;
        s_psi += qv;
        ++count;
    }
    const double N = static_cast<double>(count);
    CorrelationEntry e;
    e.n = n;
    e.value = std::abs(s_cross / N - (s_phi / N) * (s_psi / N));
    // conservative certified bound: the composed observable phi o T^n has
    // Lipschitz constant Lip(phi) (rotation) or 2^n Lip(phi) (doubling)
    const double expand =
        map.kind == SystemKind::doubling
            ? std::pow(2.0, std::min<double>(static_cast<double>(n), 1024.0))
            : 1.0;
    const double comp_norm = phi.sup_norm() + expand * phi.lipschitz_norm();
    e.error_bound = comp_norm * psi.norm() * spacing;
    e.censored = e.value <= e.error_bound;
    return e;
}

CorrelationEntry correlation(const MapSpec& map, const Observable& phi,
                             const Observable& psi, long n) {
    check_pair(map, phi, psi, n);
    if (!phi.is_trig() || !psi.is_trig())
        return correlation_quadrature(map, phi, psi, n);
    CorrelationEntry e;
    e.n = n;
    e.value = std::abs(closed_form(map, phi, psi, n));
    e.error_bound = 0.0;
    e.censored = e.value == 0.0;
    return e;
}

CorrelationSeries correlation_series(const MapSpec& map, const Observable& phi,
                                     const Observable& psi,
                                     const std::vector<long>& ns) {
    CorrelationSeries s;
    s.quadrature = phi.is_trig() && psi.is_trig()
                       ? "closed-form Fourier pairing (error 0)"
                       : "uniform midpoint grid, 2^16 nodes, Lipschitz error";
    for (long n : ns) s.values.push_back(correlation(map, phi, psi, n));
    return s;
}

DecayFit decay_exponent_fit(const CorrelationSeries& series) {
    if (series.values.size() < 10)
        throw ConfigError("decay_exponent_fit: need at least 10 entries");
    DecayFit fit;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const CorrelationEntry& e : series.values) {
        if (e.n < 1) throw ConfigError("decay_exponent_fit: need n >= 1");
        const bool usable = !e.censored && e.value > e.error_bound &&
                            e.value > 0.0;
        if (usable) {
            const double lx = std::log(static_cast<double>(e.n));
            const double ly = -std::log(e.value);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++fit.used;
        } else if (e.n >= 2 && e.error_bound > 0.0 && e.error_bound < 1.0) {
            // Phi(n) <= error certifies p >= -log(error)/log(n)
            fit.p_floor =
                std::max(fit.p_floor, -std::log(e.error_bound) /
                                          std::log(static_cast<double>(e.n)));
        }
    }
    if (fit.used >= 10) {
        const double N = fit.used;
        fit.p = (N * sxy - sx * sy) / (N * sxx - sx * sx);
    } else {
        fit.indeterminate = true;
        fit.p = fit.p_floor;
    }
    return fit;
}

double theorem1_bound(double d_low, double d_up, double p) {
    if (!(d_low > 0.0) || !(d_up >= d_low) || std::isinf(d_up))
        throw ConfigError("theorem1_bound: need 0 < d_low <= d_up < infinity");
    if (!(p > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 + (2.0 * d_up + 2.0) / (d_low * p);
}

double theoremC_upper(double d, double p) {
    if (!(d > 0.0)) throw ConfigError("theoremC_upper: need d > 0");
    if (!(p > 0.0)) return std::numeric_limits<double>::infinity();
    return d + (2.0 * d + 2.0) / p;
}

double corollary_bound(double d, double R) {
    if (!(d > 0.0)) throw ConfigError("corollary_bound: need d > 0");
    if (std::isinf(R)) return 0.0;
    if (!(R > d))
        throw ConfigError(
            "corollary_bound: indicator R must exceed the dimension d");
    return (2.0 * d + 2.0) / (R - d);
}

double doubling_indicator(int n_min, int n_max, std::uint64_t seed) {
    if (n_min < 1 || n_min > n_max)
        throw ConfigError("doubling_indicator: need 1 <= n_min <= n_max");
    SplitMix64 rng(seed);
    constexpr int kPoints = 20;
    double ratio_sum = 0.0;
    int ratio_count = 0;
    for (int n = n_min; n <= n_max; ++n) {
        const double r = std::exp(-static_cast<double>(n));
        const long cap = static_cast<long>(10000.0 / r) + 1000;
        double logs = 0.0;
        for (int p = 0; p < kPoints; ++p) {
            const double x0 = rng.next_double();
            std::uint64_t state = rng.next_u64();
            std::uint64_t bits = rng.next_u64();
            int avail = 64;
            long tau = 0;
            for (long step = 1; step <= cap; ++step) {
                if (avail == 0) {
                    bits = rng.next_u64();
                    avail = 64;
                }
                state = (state << 1) | (bits >> 63);
                bits <<= 1;
                --avail;
                const double x = static_cast<double>(state >> 11) * 0x1.0p-53;
                if (circle_dist_d(x, x0) < r) {
                    tau = step;
                    break;
                }
            }
            if (tau == 0) tau = cap;  // censored: still a lower bound
            logs += std::log(static_cast<double>(tau));
        }
        ratio_sum += (logs / kPoints) / static_cast<double>(n);
        ++ratio_count;
    }
    return ratio_sum / ratio_count;
}

std::string series_to_csv(const CorrelationSeries& series) {
    std::ostringstream out;
    out << "n,value,error_bound,censored\n";
    out.precision(17);
    for (const CorrelationEntry& e : series.values)
        out << e.n << ',' << e.value << ',' << e.error_bound << ','
            << (e.censored ? 1 : 0) << '\n';
    return out.str();
}

}  // namespace hitlab
