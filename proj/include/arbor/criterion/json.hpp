#pragma once

#include <json.hpp>

#include "arbor/criterion/criterion.hpp"

namespace arbor {

inline constexpr const char* kSchema = "arbor-kit/1";

/// Integers that fit in 64 bits become numbers, larger ones strings.
nlohmann::json integer_json(const Integer& x);
/// "p/q" or "p".
nlohmann::json rational_json(const Rational& x);

nlohmann::json map_json(const UnicriticalMap& f);
nlohmann::json orbit_json(const OrbitResult& r);
nlohmann::json profile_json(const GaloisProfile& P);
nlohmann::json frobenius_json(const std::vector<FrobeniusSample>& s);
nlohmann::json bracket_json(const GNBracket& b);
nlohmann::json candidates_json(const ConstantCandidates& c);
nlohmann::json evaluation_json(const CriterionEvaluation& e);
nlohmann::json report_json(const CriterionReport& r);

}  // namespace arbor
