#pragma once
#include <functional>
#include <string>
#include <vector>

namespace rfim {

struct CriterionResult {
  std::string id;      // "C1".."C11"
  std::string name;    // what the criterion establishes
  std::string detail;  // measured quantities and the pinned tolerance
  bool pass = false;
  double seconds = 0.0;
};

/** Run the full acceptance battery; artifacts (CSV tables, scaling outputs)
 *  are written under artifact_dir.  Deterministic from hard-coded seeds.
 *  on_result, when set, is invoked as each criterion completes. */
std::vector<CriterionResult> run_acceptance(
    const std::string& artifact_dir,
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace rfim
