#include "hitlab/json_io.hpp"

#include <cstdio>

namespace hitlab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json cf_to_json(const ContinuedFraction& cf) {
    Json j;
    j["a0"] = to_decimal(cf.a0);
    Json q = Json::array();
    for (const BigInt& a : cf.quotients) q.push_back(to_decimal(a));
    j["quotients"] = q;
    return j;
}

ContinuedFraction cf_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("a0") || !j.contains("quotients"))
        throw ConfigError("cf_from_json: need {a0, quotients}");
    ContinuedFraction cf;
    cf.a0 = BigInt(j.at("a0").get<std::string>());
    for (const auto& a : j.at("quotients"))
        cf.quotients.emplace_back(a.get<std::string>());
    return cf;
}

Json rational_to_json(const Rational& r) { return to_fraction_string(r); }

Rational rational_from_json(const Json& j) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

Json membership_to_json(const MembershipReport& report) {
    Json j;
    j["all_ok"] = report.all_ok;
    Json levels = Json::array();
    for (const LevelReport& l : report.levels) {
        Json e;
        e["level"] = l.level;
        e["prime_ok"] = l.prime_ok;
        e["next_ok"] = l.next_ok;
        e["margin_prime"] = format_double(l.margin_prime);
        e["margin_next"] = format_double(l.margin_next);
        levels.push_back(e);
    }
    j["levels"] = levels;
    return j;
}

Json pair_to_json(const IntertwinedPair& pair,
                  const MembershipReport& report) {
    Json j;
    j["alpha"] = cf_to_json(pair.alpha);
    j["alpha_prime"] = cf_to_json(pair.alpha_prime);
    j["gamma"] = format_double(pair.gamma);
    j["levels"] = pair.levels;
    j["regime"] = pair.regime == PairRegime::power ? "power" : "exponential";
    j["membership"] = membership_to_json(report);
    return j;
}

IntertwinedPair pair_from_json(const Json& j) {
    IntertwinedPair pair;
    pair.alpha = cf_from_json(j.at("alpha"));
    pair.alpha_prime = cf_from_json(j.at("alpha_prime"));
    pair.gamma = std::stod(j.at("gamma").get<std::string>());
    pair.levels = j.at("levels").get<int>();
    pair.regime = j.at("regime").get<std::string>() == "exponential"
                      ? PairRegime::exponential
                      : PairRegime::power;
    return pair;
}

Json indicator_to_json(const IndicatorEstimate& est) {
    Json j;
    j["R_low"] = format_double(est.R_low);
    j["R_up"] = format_double(est.R_up);
    j["censored_count"] = est.censored_count;
    Json ratios = Json::array();
    for (const auto& [n, ratio] : est.ratios) {
        Json e;
        e["n"] = n;
        e["ratio"] = format_double(ratio);
        ratios.push_back(e);
    }
    j["ratios"] = ratios;
    return j;
}

Json key_lemma_to_json(const KeyLemmaQuery& query,
                       const KeyLemmaResult& result) {
    Json j;
    j["beta"] = format_double(query.beta);
    j["M"] = format_double(query.M);
    j["N"] = format_double(query.N);
    j["window"] = query.n;
    j["r"] = rational_to_json(query.r);
    j["K"] = to_decimal(result.K);
    j["lhs"] = rational_to_json(result.lhs);
    j["rhs_lower"] = rational_to_json(result.rhs_lower);
    j["holds"] = result.holds;
    return j;
}

Json borel_cantelli_to_json(const BorelCantelliReport& report) {
    Json j;
    j["beta"] = format_double(report.beta);
    j["all_bounded"] = report.all_bounded;
    Json rows = Json::array();
    for (const BorelCantelliRow& row : report.rows) {
        Json e;
        e["level"] = row.window.level;
        e["primed"] = row.window.primed;
        e["M"] = format_double(row.window.M);
        e["N"] = format_double(row.window.N);
        e["radius_count"] = row.radius_count;
        e["sum_measure"] = rational_to_json(row.sum_measure);
        e["series_bound_beta"] = rational_to_json(row.series_bound_beta);
        e["series_bound_gamma"] = rational_to_json(row.series_bound_gamma);
        e["degenerate"] = row.degenerate;
        e["bounded"] = row.bounded;
        rows.push_back(e);
    }
    j["rows"] = rows;
    Json sums = Json::array();
    for (const Rational& s : report.partial_sums)
        sums.push_back(rational_to_json(s));
    j["partial_sums"] = sums;
    return j;
}

}  // namespace hitlab
