// One line per verification criterion. Criterion 11 is the long Kantor-Knuth
// census; set GQCOV_SKIP_STRETCH=1 to skip it.

#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>

#include "gqcov/suites.hpp"

using namespace gqcov;

int main() {
  // Criteria that fail on this implementation for reasons recorded in the README.
  const std::set<int> known_failures = {7, 8};
  const bool skip_stretch = std::getenv("GQCOV_SKIP_STRETCH") != nullptr;

  SuiteOptions options;
  ConstructionCache cache(options);
  int unexpected = 0;
  for (int id = 1; id <= 11; ++id) {
    if (id == 11 && skip_stretch) {
      std::printf("criterion 11 [Kantor-Knuth census q=9]: SKIP\n");
      continue;
    }
    CriterionOutcome r;
    try {
      r = evaluate_criterion(id, cache, options);
    } catch (const std::exception& e) {
      std::printf("criterion %d: FAIL (exception: %s)\n", id, e.what());
      ++unexpected;
      continue;
    }
    const bool pass = r.pass();
    const bool known = known_failures.count(id) > 0;
    std::printf("criterion %d [%s]: %s (%zu checks, %.2fs)%s\n", id, r.title.c_str(), pass ? "PASS" : "FAIL",
                r.checks.size(), r.seconds, !pass && known ? " known deviation" : "");
    for (const auto& c : r.checks)
      if (!c.pass) std::printf("    failed: %s (%s)\n", c.name.c_str(), c.detail.c_str());
    if (!r.diagnostics.empty() && (!pass || id == 11)) std::printf("    diagnostics: %s\n", r.diagnostics.dump().c_str());
    if (pass && known) std::printf("    note: listed as a known deviation but now passes\n");
    if (!pass && !known) ++unexpected;
  }
  std::fflush(stdout);
  return unexpected == 0 ? 0 : 1;
}
