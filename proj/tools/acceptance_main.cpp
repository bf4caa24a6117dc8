#include <cstdio>
#include <string>

#include "rfim/acceptance.hpp"

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "acceptance_artifacts";
  size_t passed = 0, total = 0;
  const auto results = rfim::run_acceptance(dir, [&](const rfim::CriterionResult& r) {
    std::printf("[%s] %-3s %s :: %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                r.name.c_str(), r.detail.c_str(), r.seconds);
    std::fflush(stdout);
    ++total;
    if (r.pass) ++passed;
  });
  (void)results;
  std::printf("%s: %zu/%zu criteria passed; artifacts in %s\n",
              passed == total ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", passed, total,
              dir.c_str());
  return passed == total && total > 0 ? 0 : 1;
}
