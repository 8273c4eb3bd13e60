#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace arbor {

struct AcceptanceResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // human-readable, may mention timings
  nlohmann::json data;  // deterministic for a fixed seed
};

/// Criteria 1 to 10. The seed drives the random spot checks.
std::vector<AcceptanceResult> run_acceptance(std::uint64_t seed);

/// All eleven, the last one comparing two serializations of the first ten.
std::vector<AcceptanceResult> run_acceptance_with_determinism(std::uint64_t seed);

/// {"schema", "seed", "criteria": [{id, name, pass, data}], "passed", "total"}
nlohmann::json acceptance_json(const std::vector<AcceptanceResult>& results, std::uint64_t seed);

}  // namespace arbor
