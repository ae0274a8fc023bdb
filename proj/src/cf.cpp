#include "hitlab/cf.hpp"

#include <cmath>

namespace hitlab {

double log_big(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log_big: nonpositive");
    std::size_t bits = boost::multiprecision::msb(v);
    if (bits <= 52) return std::log(v.convert_to<double>());
    double mant = BigInt(v >> (bits - 52)).convert_to<double>();
    return std::log(mant) + static_cast<double>(bits - 52) * std::log(2.0);
}

double log_rational(const Rational& v) {
    if (v <= 0) throw std::domain_error("log_rational: nonpositive");
    return log_big(numerator(v)) - log_big(denominator(v));
}

void validate(const ContinuedFraction& cf) {
    for (const auto& a : cf.quotients)
        if (a < 1) throw std::invalid_argument("partial quotient < 1");
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t n) {
    if (n > cf.depth())
        throw std::out_of_range("convergent depth exceeds stored quotients");
    std::vector<Convergent> out;
    out.reserve(n + 1);
    BigInt p_prev = 1, p_cur = 0;  // p_{-1}, p_0
    BigInt q_prev = 0, q_cur = 1;  // q_{-1}, q_0
    out.push_back({p_cur, q_cur, 0});
    for (std::size_t k = 1; k <= n; ++k) {
        const BigInt& a = cf.quotients[k - 1];
        BigInt p_next = a * p_cur + p_prev;
        BigInt q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
        out.push_back({p_cur, q_cur, static_cast<int>(k)});
    }
    return out;
}

Rational value(const ContinuedFraction& cf) {
    if (cf.depth() < 1) throw std::invalid_argument("value: depth must be >= 1");
    auto cs = convergents(cf, cf.depth());
    return Rational(cf.a0) + Rational(cs.back().p, cs.back().q);
}

Rational norm_q_alpha(const ContinuedFraction& cf, std::size_t n) {
    if (cf.depth() < 2 || n > cf.depth() - 2)
        throw DepthError("norm_q_alpha: need n <= depth - 2");
    auto cs = convergents(cf, n);
    Rational v = frac(value(cf));
    Rational diff = Rational(cs[n].q) * v - Rational(cs[n].p);
    if (diff < 0) diff = -diff;
    return diff;
}

double type_estimate(const ContinuedFraction& cf) {
    if (cf.depth() < 3) throw std::invalid_argument("type_estimate: depth < 3");
    auto cs = convergents(cf, cf.depth());
    std::size_t N = cf.depth();
    std::size_t start = std::max<std::size_t>(1, N / 2);
    double best = 1.0;
    for (std::size_t n = start; n + 1 <= N; ++n) {
        if (cs[n].q == 1) continue;
        best = std::max(best, log_big(cs[n + 1].q) / log_big(cs[n].q));
    }
    return best;
}

void check_horizon(const ContinuedFraction& cf, const BigInt& iterations,
                   const Rational& radius) {
    auto cs = convergents(cf, cf.depth());
    const BigInt& qN = cs[cf.depth()].q;
    const BigInt& qN1 = cs[cf.depth() - 1].q;
    if (Rational(iterations, qN * qN1) >= radius / 10)
        throw HorizonError(
            "truncation too shallow for requested horizon/radius: K/(q_N q_{N-1}) "
            ">= r/10");
}

ContinuedFraction cf_from_rational(const Rational& x) {
    if (x < 0 || x >= 1) throw std::invalid_argument("cf_from_rational: need [0,1)");
    ContinuedFraction cf;
    cf.a0 = 0;
    BigInt p = numerator(x), q = denominator(x);
    while (p != 0) {
        cf.quotients.push_back(q / p);
        BigInt r = q % p;
        q = p;
        p = r;
    }
    return cf;
}

ContinuedFraction make_cf(long a0, std::initializer_list<long> qs) {
    ContinuedFraction cf;
    cf.a0 = a0;
    for (long q : qs) cf.quotients.emplace_back(q);
    validate(cf);
    return cf;
}

ContinuedFraction golden_cf(std::size_t depth) {
    ContinuedFraction cf;
    cf.a0 = 0;
    cf.quotients.assign(depth, BigInt(1));
    return cf;
}

}  // namespace hitlab
