#include <cstdio>

#include "arbor/acceptance/acceptance.hpp"

int main() {
  const auto results = arbor::run_acceptance_with_determinism(42);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
    failed += !r.pass;
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
  return failed ? 1 : 0;
}
