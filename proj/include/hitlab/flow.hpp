#pragma once

#include <optional>
#include <vector>

#include "hitlab/numeric.hpp"

namespace hitlab {

// Linear flow x -> x + t * direction on T^d, d = 2 or 3. Directions are
// doubles (every double is an exact dyadic rational, so closed-form results
// below are exact statements about the dyadic direction actually stored);
// truncation provenance, when a component comes from a continued fraction,
// lives with the caller.
struct TranslationFlow {
    std::vector<double> direction;
};

// One multi-frequency term a*cos(2 pi k.x) + b*sin(2 pi k.x).
struct TrigTerm {
    std::vector<int> freq;
    double cos_coef = 0.0;
    double sin_coef = 0.0;
};

// Strictly positive speed function as a finite trigonometric polynomial
// c0 + sum of terms. Positivity is certified from the coefficients:
// min >= c0 - sum of term amplitudes must be positive (ConfigError
// otherwise), and C = max(upper bound, 1 / lower bound) certifies
// 1/C < speed < C.
class Reparametrization {
  public:
    Reparametrization() = default;  // speed identically 1
    Reparametrization(double c0, std::vector<TrigTerm> terms);

    double operator()(const std::vector<double>& x) const;
    double min_lower() const { return min_lower_; }
    double max_upper() const { return max_upper_; }
    double certified_C() const;

    bool is_constant() const { return terms_.empty(); }
    double c0() const { return c0_; }
    const std::vector<TrigTerm>& terms() const { return terms_; }

    // Same speed scaled by s > 0 (hitting times scale by 1/s).
    Reparametrization scaled(double s) const;

  private:
    double c0_ = 1.0;
    std::vector<TrigTerm> terms_;
    double min_lower_ = 1.0;
    double max_upper_ = 1.0;
};

double wrap_unit(double v);                  // to [0, 1)
double circle_dist_d(double a, double b);    // nearest-integer distance
double sup_dist_d(const std::vector<double>& a, const std::vector<double>& b);

// inf{t >= 0 : Phi_t(x) in B_r(x0)} for the unreparametrized flow, solved
// semi-analytically: each moving coordinate admits a periodic family of
// time windows, and a sweep advances t to the next start of a violated
// window until all overlap. Returns nullopt when no entry occurs by t_max.
// A frozen coordinate (direction component 0) outside the target makes the
// query unsatisfiable: ConfigError.
std::optional<double> flow_hit(const TranslationFlow& flow,
                               const std::vector<double>& x,
                               const std::vector<double>& x0, double r,
                               double t_max);

// Same for the flow reparametrized by `speed` (velocity speed(x) *
// direction), integrated with a fixed-step classical 4th-order scheme whose
// step is chosen so the accumulated error stays below r/100 over t_max;
// ball entry is refined by bisection to 1e-10. Throws ResourceError when
// the required number of steps exceeds the budget.
std::optional<double> reparam_flow_hit(const TranslationFlow& flow,
                                       const Reparametrization& speed,
                                       const std::vector<double>& x,
                                       const std::vector<double>& x0, double r,
                                       double t_max);

// Phi_1(x). Constant speeds use the closed form x + c0 * direction mod 1
// (exact translation); otherwise one time unit is integrated.
std::vector<double> time1_map(const TranslationFlow& flow,
                              const Reparametrization& speed,
                              const std::vector<double>& x);

// First n in 1..n_max with Phi_n(x) in B_r(x0) (iterated time-1 map), the
// discrete system whose hitting times dominate the flow's.
std::optional<long> discrete_hit(const TranslationFlow& flow,
                                 const Reparametrization& speed,
                                 const std::vector<double>& x,
                                 const std::vector<double>& x0, double r,
                                 long n_max);

struct SectionReturn {
    std::vector<double> point;  // next crossing of {x_1 = c}
    double return_time = 0.0;   // flow time from x to that crossing
};

// Poincare section on {x_1 = c}; requires direction[0] > 0 (the first
// coordinate then increases strictly and every orbit crosses). Constant
// speeds give the closed form: return time 1/(c0 * d_1) from the section,
// section map = translation by direction / d_1 in the remaining
// coordinates. Generic speeds integrate with bisection event detection to
// 1e-10 (ResourceError when the crossing exceeds the step budget).
SectionReturn poincare_section(const TranslationFlow& flow,
                               const Reparametrization& speed, double c,
                               const std::vector<double>& x);

// Invariance proxy of the measure with density 1/speed under the time-1
// map: both sides of mu(Q) = mu(Phi_1^{-1}(Q)) estimated with the same
// jittered-grid sample (seeded, side*side points). Returns (mu(Q) estimate,
// mu(Phi_1^{-1}(Q)) estimate), unnormalized.
std::pair<double, double> invariant_measure_proxy(
    const TranslationFlow& flow, const Reparametrization& speed,
    const std::vector<double>& q_lo, const std::vector<double>& q_hi,
    int side, std::uint64_t seed);

}  // namespace hitlab
