#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hitlab/flow.hpp"  // TrigTerm, wrap_unit

namespace hitlab {

// Systems whose correlations this module can evaluate: translations of T^d
// (Lebesgue-preserving, non-mixing) and the circle doubling map (the
// fast-decay control case).
enum class SystemKind { rotation, doubling };

struct MapSpec {
    SystemKind kind = SystemKind::rotation;
    std::vector<double> alpha;  // rotation vector; empty for doubling (d = 1)
    std::size_t dim() const {
        return kind == SystemKind::doubling ? 1 : alpha.size();
    }
};

// Lipschitz observable on T^d: either a finite trigonometric polynomial
// (closed-form correlations available) or a piecewise-linear hat (quadrature
// only). Carries certified norms: for trig polynomials the Lipschitz bound
// is the closed form sum of |coef| * 2 pi |freq|, for hats height/halfwidth.
// The norm convention is sup-norm plus best Lipschitz constant.
class Observable {
  public:
    static Observable trig(std::size_t dim, double mean,
                           std::vector<TrigTerm> terms);
    // Tent of the given height on (center - halfwidth, center + halfwidth),
    // zero outside; mean_removed subtracts its mean height * halfwidth.
    static Observable hat(double center, double halfwidth, double height,
                          bool mean_removed);

    double operator()(const std::vector<double>& x) const;
    std::size_t dim() const { return dim_; }
    double lipschitz_norm() const { return lip_; }
    double sup_norm() const { return sup_; }
    double norm() const { return sup_ + lip_; }  // sup + Lip convention
    double mean() const { return mean_; }
    bool mean_removed() const { return mean_ == 0.0; }
    bool is_trig() const { return is_trig_; }
    const std::vector<TrigTerm>& terms() const { return terms_; }

  private:
    Observable() = default;
    std::size_t dim_ = 1;
    bool is_trig_ = true;
    double mean_ = 0.0;
    std::vector<TrigTerm> terms_;                       // trig case
    std::function<double(double)> eval1_;               // hat case (d = 1)
    double sup_ = 0.0, lip_ = 0.0;
};

struct CorrelationEntry {
    long n = 0;
    double value = 0.0;        // |int phi o T^n psi dmu - int phi int psi|
    double error_bound = 0.0;  // certified quadrature error (0 = closed form)
    bool censored = false;     // value at or below the error floor
};

struct CorrelationSeries {
    std::vector<CorrelationEntry> values;
    std::string quadrature;  // description of how entries were computed
};

// One correlation value. Trig x trig pairs use the exact Fourier pairing
// (rotation: phase shift e^{2 pi i n k.alpha}; doubling: frequency match
// k -> 2^n k), error_bound 0. Any other pair falls back to a uniform grid
// of 2^16 points with certified error ||phi o T^n|| * ||psi|| * spacing
// (the composed Lipschitz constant -- for the doubling map it grows like
// 2^n, and the bound grows with it). Unsupported dimension combinations
// raise ConfigError.
CorrelationEntry correlation(const MapSpec& map, const Observable& phi,
                             const Observable& psi, long n);

// Quadrature route regardless of observable class; exposed for cross-checks
// of the closed forms.
CorrelationEntry correlation_quadrature(const MapSpec& map,
                                        const Observable& phi,
                                        const Observable& psi, long n);

CorrelationSeries correlation_series(const MapSpec& map, const Observable& phi,
                                     const Observable& psi,
                                     const std::vector<long>& ns);

// Least-squares slope of -log value against log n over the entries above
// the error floor. With fewer than 10 usable entries the exponent is
// indeterminate and only the censoring floor speaks: each censored entry n
// certifies p >= -log(error)/log(n), and p_floor is the best such bound.
struct DecayFit {
    double p = 0.0;
    bool indeterminate = false;
    double p_floor = 0.0;
    int used = 0;  // entries entering the fit
};

DecayFit decay_exponent_fit(const CorrelationSeries& series);

// Upper bound on the limsup hitting indicator from polynomial decay of
// correlations: 1 + (2 d_up + 2)/(d_low * p); +infinity when p <= 0
// (subpolynomial regime). d_low > 0 and d_up < infinity required.
double theorem1_bound(double d_low, double d_up, double p);

// Exact-dimension companion band top: d + (2d + 2)/p.
double theoremC_upper(double d, double p);

// Largest decay exponent compatible with hitting indicator R on a
// d-dimensional system: (2d + 2)/(R - d); 0 when R is infinite
// (subpolynomial mixing only). R <= d is inconsistent: ConfigError.
double corollary_bound(double d, double R);

// Empirical hitting indicator of the doubling map from a simulated orbit of
// a Lebesgue-random point (fixed-point state fed fresh uniform bits, since
// a double-precision orbit of 2x mod 1 loses all entropy in 52 steps).
// Returns the mean of log tau / (-log r) over radii e^{-n_min}..e^{-n_max}.
double doubling_indicator(int n_min, int n_max, std::uint64_t seed);

// CSV export: header n,value,error_bound,censored.
std::string series_to_csv(const CorrelationSeries& series);

}  // namespace hitlab
