#include "hitlab/pair_builder.hpp"

#include <string>

#include "hitlab/certified.hpp"

namespace hitlab {

namespace {

// Denominators q_0..q_depth of a fraction (paper initialization q_0 = 1).
std::vector<BigInt> denoms(const ContinuedFraction& cf) {
    std::vector<BigInt> q{1};
    BigInt prev = 0, cur = 1;
    for (const auto& a : cf.quotients) {
        BigInt nxt = a * cur + prev;
        prev = cur;
        cur = nxt;
        q.push_back(cur);
    }
    return q;
}

void append_quotient(ContinuedFraction& cf, std::vector<BigInt>& q,
                     const BigInt& a) {
    BigInt prev = q.size() >= 2 ? q[q.size() - 2] : BigInt(0);
    cf.quotients.push_back(a);
    q.push_back(a * q.back() + prev);
}

// Minimal a >= 1 with a * cur + prev >= target.
BigInt greedy_quotient(const BigInt& target, const BigInt& cur,
                       const BigInt& prev) {
    BigInt need = target - prev;
    if (need <= 0) return 1;
    BigInt a = ceil_div(need, cur);
    return a < 1 ? BigInt(1) : a;
}

void check_budget(const BigInt& q, int level, long bit_budget,
                  const char* what) {
    if (q > 1 &&
        static_cast<long>(boost::multiprecision::msb(q)) + 1 > bit_budget)
        throw ResourceError(std::string(what) + " denominator at level " +
                            std::to_string(level) + " exceeds the bit budget");
}

}  // namespace

IntertwinedPair build_pair(double gamma, int levels,
                           const std::vector<BigInt>& seed_alpha,
                           const std::vector<BigInt>& seed_alpha_prime,
                           long bit_budget) {
    if (!(gamma > 1.0)) throw ConfigError("build_pair: gamma must be > 1");
    if (levels < 1) throw ConfigError("build_pair: levels must be >= 1");

    IntertwinedPair pair;
    pair.gamma = gamma;
    pair.levels = levels;
    pair.regime = PairRegime::power;
    pair.alpha.a0 = 0;
    pair.alpha.quotients =
        seed_alpha.empty() ? std::vector<BigInt>{2} : seed_alpha;
    pair.alpha_prime.a0 = 0;
    pair.alpha_prime.quotients = seed_alpha_prime;
    validate(pair.alpha);
    validate(pair.alpha_prime);

    auto qa = denoms(pair.alpha);
    auto qp = denoms(pair.alpha_prime);

    // Quotients fixed by a seed prefix are left alone (their levels may
    // legitimately fail membership); every appended quotient is re-verified
    // exactly against its inequality after the greedy choice.
    for (int n = 1; n <= levels; ++n) {
        const std::size_t un = static_cast<std::size_t>(n);
        if (pair.alpha_prime.depth() < un) {
            BigInt target = ceil_pow(qa[un], gamma);
            BigInt prev = qp.size() >= 2 ? qp[qp.size() - 2] : BigInt(0);
            append_quotient(pair.alpha_prime, qp,
                            greedy_quotient(target, qp.back(), prev));
            if (qp[un] < target)
                throw std::logic_error(
                    "build_pair: post-hoc verification failed");
        }
        check_budget(qp[un], n, bit_budget, "build_pair: alpha'");
        if (pair.alpha.depth() < un + 1) {
            BigInt target = ceil_pow(qp[un], gamma);
            BigInt prev = qa.size() >= 2 ? qa[qa.size() - 2] : BigInt(0);
            append_quotient(pair.alpha, qa,
                            greedy_quotient(target, qa.back(), prev));
            if (qa[un + 1] < target)
                throw std::logic_error(
                    "build_pair: post-hoc verification failed");
        }
        check_budget(qa[un + 1], n, bit_budget, "build_pair: alpha");
    }
    return pair;
}

IntertwinedPair build_exponential_pair(int levels, long bit_budget) {
    if (levels < 1)
        throw ConfigError("build_exponential_pair: levels must be >= 1");
    if (levels > 3)
        throw ResourceError("build_exponential_pair: levels > 3 unsupported");

    IntertwinedPair pair;
    pair.gamma = 1.0;
    pair.levels = levels;
    pair.regime = PairRegime::exponential;
    pair.alpha.a0 = 0;
    pair.alpha.quotients = {1};  // q_1 = 1
    pair.alpha_prime.a0 = 0;

    auto qa = denoms(pair.alpha);
    auto qp = denoms(pair.alpha_prime);

    for (int n = 1; n <= levels; ++n) {
        const std::size_t un = static_cast<std::size_t>(n);
        try {
            {
                BigInt target = ceil_exp_int(3 * qa[un], bit_budget);
                BigInt prev = qp.size() >= 2 ? qp[qp.size() - 2] : BigInt(0);
                append_quotient(pair.alpha_prime, qp,
                                greedy_quotient(target, qp.back(), prev));
            }
            {
                BigInt target = ceil_exp_int(3 * qp[un], bit_budget);
                BigInt prev = qa.size() >= 2 ? qa[qa.size() - 2] : BigInt(0);
                append_quotient(pair.alpha, qa,
                                greedy_quotient(target, qa.back(), prev));
            }
        } catch (const ResourceError&) {
            throw ResourceError(
                "build_exponential_pair: level " + std::to_string(n) +
                " requires denominators beyond the bit budget (e^{3q} with "
                "q having " +
                std::to_string(boost::multiprecision::msb(qa[un]) + 1) +
                " bits)");
        }
    }

    if (!verify_membership(pair).all_ok)
        throw std::logic_error(
            "build_exponential_pair: post-hoc verification failed");
    return pair;
}

MembershipReport verify_membership(const IntertwinedPair& pair) {
    MembershipReport rep;
    auto qa = denoms(pair.alpha);
    auto qp = denoms(pair.alpha_prime);
    rep.all_ok = true;
    for (int n = 1; n <= pair.levels; ++n) {
        const std::size_t un = static_cast<std::size_t>(n);
        LevelReport lr;
        lr.level = n;
        if (un >= qp.size() || un + 1 >= qa.size()) {
            rep.all_ok = false;
            rep.levels.push_back(lr);  // missing depth: both checks fail
            continue;
        }
        if (pair.regime == PairRegime::power) {
            lr.prime_ok = qp[un] >= ceil_pow(qa[un], pair.gamma);
            lr.next_ok = qa[un + 1] >= ceil_pow(qp[un], pair.gamma);
            lr.margin_prime =
                log_big(qp[un]) - pair.gamma * log_big(qa[un]);
            lr.margin_next =
                log_big(qa[un + 1]) - pair.gamma * log_big(qp[un]);
        } else {
            lr.prime_ok = qp[un] >= ceil_exp_int(3 * qa[un]);
            lr.next_ok = qa[un + 1] >= ceil_exp_int(3 * qp[un]);
            lr.margin_prime =
                log_big(qp[un]) - 3.0 * qa[un].convert_to<double>();
            lr.margin_next =
                log_big(qa[un + 1]) - 3.0 * qp[un].convert_to<double>();
        }
        rep.all_ok = rep.all_ok && lr.prime_ok && lr.next_ok;
        rep.levels.push_back(lr);
    }
    return rep;
}

}  // namespace hitlab
