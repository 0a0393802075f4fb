#pragma once
// The ten go/no-go checks this project commits to, runnable one at a time
// (ctest carries one entry per criterion) or as a batch from the CLI driver.
// Tolerances are pinned in the implementation, not configurable.

#include <cstdint>
#include <string>
#include <vector>

namespace sse {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values against the pinned tolerances
  double seconds = 0;
};

std::vector<int> all_criteria();  // {1, ..., 10}

// ids outside that list throw ConfigError
CriterionResult run_criterion(int id, std::uint64_t seed, int threads);
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            std::uint64_t seed, int threads);

}  // namespace sse
