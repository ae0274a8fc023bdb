#include "hitlab/certified.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <utility>

namespace hitlab {

namespace {

void set_from_bigint(mpfr_t out, const BigInt& v, mpfr_rnd_t rnd) {
    mpfr_set_str(out, v.str().c_str(), 10, rnd);
}

BigInt bigint_from_mpz(const mpz_t z) {
    char* s = mpz_get_str(nullptr, 16, z);
    BigInt r;
    if (s[0] == '-')
        r = -BigInt("0x" + std::string(s + 1));
    else
        r = BigInt("0x" + std::string(s));
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, std::strlen(s) + 1);
    return r;
}

// Exact rational value of an mpfr number (finite).
Rational rational_from_mpfr(const mpfr_t x) {
    if (mpfr_zero_p(x)) return Rational(0);
    mpz_t m;
    mpz_init(m);
    mpfr_exp_t e = mpfr_get_z_2exp(m, x);
    BigInt mant = bigint_from_mpz(m);
    mpz_clear(m);
    Rational r(mant);
    if (e >= 0)
        r *= Rational(BigInt(1) << e);
    else
        r /= Rational(BigInt(1) << (-e));
    return r;
}

}  // namespace

Ival::Ival(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Ival::Ival(const Ival& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Ival::Ival(Ival&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Ival& Ival::operator=(Ival o) {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Ival::~Ival() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Ival Ival::exact(const BigInt& v, mpfr_prec_t prec) {
    Ival r(prec);
    set_from_bigint(r.lo_, v, MPFR_RNDD);
    set_from_bigint(r.hi_, v, MPFR_RNDU);
    return r;
}

Ival Ival::exact(const Rational& v, mpfr_prec_t prec) {
    Ival num = exact(numerator(v), prec);
    Ival den = exact(denominator(v), prec);
    return num / den;
}

Ival Ival::exact(double v, mpfr_prec_t prec) {
    Ival r(prec);
    mpfr_set_d(r.lo_, v, MPFR_RNDD);
    mpfr_set_d(r.hi_, v, MPFR_RNDU);
    return r;
}

Ival Ival::operator+(const Ival& o) const {
    Ival r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

Ival Ival::operator-(const Ival& o) const {
    Ival r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

Ival Ival::operator*(const Ival& o) const {
    Ival r(std::max(prec_, o.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    // lo: min of the four products rounded down
    mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    // hi: max of the four products rounded up
    mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Ival Ival::inv() const {
    if (mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0)
        throw std::domain_error("Ival::inv: interval contains zero");
    Ival r(prec_);
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
    return r;
}

Ival Ival::operator/(const Ival& o) const { return *this * o.inv(); }

Ival Ival::neg() const {
    Ival r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Ival Ival::exp() const {
    Ival r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ival Ival::log() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("Ival::log: nonpositive");
    Ival r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Ival Ival::pow(const Ival& y) const {
    // x^y = exp(y log x), monotone pieces handled by the interval ops
    return (log() * y).exp();
}

bool Ival::certainly_less(const Ival& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }

bool Ival::certainly_positive() const { return mpfr_sgn(lo_) > 0; }

Rational Ival::lower() const { return rational_from_mpfr(lo_); }
Rational Ival::upper() const { return rational_from_mpfr(hi_); }

double Ival::mid() const {
    return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
}

std::optional<BigInt> Ival::floor_certified() const {
    mpfr_t fl, fh;
    mpfr_init2(fl, prec_);
    mpfr_init2(fh, prec_);
    mpfr_floor(fl, lo_);
    mpfr_floor(fh, hi_);
    std::optional<BigInt> out;
    if (mpfr_cmp(fl, fh) == 0) {
        mpz_t z;
        mpz_init(z);
        mpfr_get_z(z, fl, MPFR_RNDN);
        out = bigint_from_mpz(z);
        mpz_clear(z);
    }
    mpfr_clear(fl);
    mpfr_clear(fh);
    return out;
}

std::optional<BigInt> Ival::ceil_certified() const {
    mpfr_t cl, ch;
    mpfr_init2(cl, prec_);
    mpfr_init2(ch, prec_);
    mpfr_ceil(cl, lo_);
    mpfr_ceil(ch, hi_);
    std::optional<BigInt> out;
    if (mpfr_cmp(cl, ch) == 0) {
        mpz_t z;
        mpz_init(z);
        mpfr_get_z(z, cl, MPFR_RNDN);
        out = bigint_from_mpz(z);
        mpz_clear(z);
    }
    mpfr_clear(cl);
    mpfr_clear(ch);
    return out;
}

BigInt ceil_pow(const BigInt& q, double gamma) {
    if (q <= 0) throw std::domain_error("ceil_pow: q must be positive");
    if (gamma <= 0) throw std::domain_error("ceil_pow: exponent must be positive");
    if (q == 1) return 1;
    // Exact path for dyadic exponents k/2^j with small j (covers 1.5, 2, 3, ...):
    // ceil(q^(k/2^j)) via k-th power and j nested floor square roots. This is
    // the only way to settle the case where q^gamma is itself an integer.
    double g = gamma;
    int j = 0;
    while (g != std::floor(g) && j < 60) {
        g *= 2;
        ++j;
    }
    std::size_t qbits = boost::multiprecision::msb(q) + 1;
    if (j <= 6 && g * static_cast<double>(qbits) < 1e8) {
        BigInt power = pow(q, static_cast<unsigned>(g));
        BigInt root = power;
        for (int i = 0; i < j; ++i) root = sqrt(root);  // floor(2^j-th root)
        BigInt check = root;
        for (int i = 0; i < j; ++i) check *= check;
        return check == power ? root : root + 1;
    }
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(
        std::max<std::size_t>(256, qbits * static_cast<std::size_t>(gamma + 2)));
    for (int attempt = 0; attempt < 8; ++attempt) {
        Ival v = Ival::exact(q, prec).pow(Ival::exact(gamma, prec));
        if (auto c = v.ceil_certified()) return *c;
        prec *= 2;
    }
    throw ResourceError("ceil_pow: could not certify ceiling");
}

BigInt ceil_exp_int(const BigInt& t, long max_bits) {
    if (t <= 0) throw std::domain_error("ceil_exp_int: t must be positive");
    // e^t needs about t * log2(e) bits
    if (t * 1443 / 1000 + 64 > max_bits)
        throw ResourceError("ceil_exp_int: result would exceed bit budget (t=" +
                            t.str() + ")");
    mpfr_prec_t prec =
        static_cast<mpfr_prec_t>(t.convert_to<long>() * 1443 / 1000 + 128);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Ival v = Ival::exact(t, prec).exp();
        if (auto c = v.ceil_certified()) return *c;
        prec *= 2;
    }
    throw ResourceError("ceil_exp_int: could not certify ceiling");
}

Ival pow_interval(const Rational& base, double exponent, mpfr_prec_t prec) {
    return Ival::exact(base, prec).pow(Ival::exact(exponent, prec));
}

Ival exp_interval(double x, mpfr_prec_t prec) {
    return Ival::exact(x, prec).exp();
}

namespace {

// Simplest fraction in [a/b, c/d] for 0 < a/b <= c/d.
Rational simplest_pos(BigInt a, BigInt b, BigInt c, BigInt d) {
    BigInt fl = a / b;
    if (fl * b == a) return Rational(fl);          // lower endpoint is integral
    if (Rational(fl + 1) <= Rational(c, d))        // an integer lies inside
        return Rational(fl + 1);
    // both endpoints share the integer part; recurse on reciprocal tails
    Rational inner = simplest_pos(d, c - fl * d, b, a - fl * b);
    return Rational(fl) + Rational(1) / inner;
}

}  // namespace

Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::domain_error("simplest_in_interval: empty interval");
    if (lo <= 0 && hi >= 0) return 0;
    if (hi < 0) return -simplest_in_interval(-hi, -lo);
    return simplest_pos(numerator(lo), denominator(lo), numerator(hi),
                        denominator(hi));
}

Rational dyadic_round(const Ival& v, int bits) {
    if (bits < 2) throw std::domain_error("dyadic_round: need bits >= 2");
    Rational lo = v.lower();
    if (lo <= 0)
        throw std::domain_error("dyadic_round: value must be positive");
    Rational mid = (lo + v.upper()) / 2;
    const BigInt& num = numerator(mid);
    const BigInt& den = denominator(mid);
    // scale mid by 2^s so the integer part carries about `bits` bits, then
    // round to the nearest integer q; the result q / 2^s has relative error
    // at most 2^(1-bits)
    long e = static_cast<long>(boost::multiprecision::msb(num)) -
             static_cast<long>(boost::multiprecision::msb(den));
    long s = bits - e;
    BigInt sn = s >= 0 ? BigInt(num << s) : num;
    BigInt sd = s >= 0 ? den : BigInt(den << (-s));
    BigInt q = (2 * sn + sd) / (2 * sd);
    if (q == 0) q = 1;
    if (s >= 0) return Rational(q, BigInt(1) << s);
    return Rational(q << (-s));
}

Rational rationalize(const Ival& v, double rel_err) {
    Rational lo = v.lower(), hi = v.upper();
    if (lo <= 0) throw std::domain_error("rationalize: value must be positive");
    // widen to the allowed relative error band around the enclosure
    Rational eps(static_cast<long>(rel_err * 1e12), 1000000000000L);
    Rational band_lo = lo * (1 - eps);
    Rational band_hi = hi * (1 + eps);
    return simplest_in_interval(band_lo, band_hi);
}

}  // namespace hitlab
