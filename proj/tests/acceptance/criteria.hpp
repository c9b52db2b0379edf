#pragma once

#include <string>
#include <vector>

namespace kgtriage::acceptance {

// A criterion returns an empty string when it holds, otherwise the first
// failure it found.
struct Criterion {
  std::string name;
  double budget_seconds = 0;  // 0 = no time limit
  std::string (*run)();
};

std::vector<Criterion> all_criteria();

}  // namespace kgtriage::acceptance
