#pragma once

#include <string>

#include "json.hpp"

#include "hitlab/indicator.hpp"
#include "hitlab/measure.hpp"
#include "hitlab/pair_builder.hpp"

namespace hitlab {

// Insertion-ordered JSON keeps every emitted document byte-stable across
// runs (field order is part of the output contract).
using Json = nlohmann::ordered_json;

// Fixed 17-significant-digit rendering for every floating-point value that
// reaches an output file.
std::string format_double(double v);

// {"a0": "<decimal>", "quotients": ["<decimal>", ...]} -- big integers
// travel as decimal strings.
Json cf_to_json(const ContinuedFraction& cf);
ContinuedFraction cf_from_json(const Json& j);

// Rationals as exact "num/den" strings.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json membership_to_json(const MembershipReport& report);
Json pair_to_json(const IntertwinedPair& pair, const MembershipReport& report);
IntertwinedPair pair_from_json(const Json& j);

Json indicator_to_json(const IndicatorEstimate& est);
Json key_lemma_to_json(const KeyLemmaQuery& query, const KeyLemmaResult& result);
Json borel_cantelli_to_json(const BorelCantelliReport& report);

}  // namespace hitlab
