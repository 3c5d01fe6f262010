// Acceptance suite: runs every verification criterion at full strength and
// prints one pass/fail line per criterion. Criteria 1, 5 and 8 also carry a
// wall-clock budget. Exit code 0 iff everything passes.

#include <cstdio>
#include <map>

#include "gesforge/verify.hpp"

int main() {
  gesforge::VerifyConfig cfg;
  cfg.fast = false;
  cfg.seed = 0xA5A5;

  const std::map<int, double> budgets_seconds{{1, 5.0}, {5, 60.0}, {8, 300.0}};

  const auto results = gesforge::run_acceptance_criteria(cfg);
  bool all_pass = true;
  for (const gesforge::CriterionResult& r : results) {
    bool pass = r.pass;
    std::string budget_note;
    if (auto it = budgets_seconds.find(r.id); it != budgets_seconds.end()) {
      const bool within = r.seconds < it->second;
      pass = pass && within;
      char buf[64];
      std::snprintf(buf, sizeof(buf), " [%.2fs of %.0fs budget]", r.seconds, it->second);
      budget_note = buf;
    }
    std::printf("%s criterion %2d %s | expected: %s | computed: %s | tolerance: %s%s\n",
                pass ? "[PASS]" : "[FAIL]", r.id, r.name.c_str(), r.expected.c_str(),
                r.computed.c_str(), r.tolerance.c_str(), budget_note.c_str());
    all_pass = all_pass && pass;
  }
  std::printf("%s\n", all_pass ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
  return all_pass ? 0 : 1;
}
