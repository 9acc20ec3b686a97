// One line per acceptance criterion; details only for failures.
#include <cstdio>

#include "hyperlap/verify.hpp"

int main() {
  int failed = 0;
  int index = 0;
  for (const std::string& name : hyperlap::suite_names()) {
    ++index;
    const hyperlap::SuiteResult r = hyperlap::run_suite(name);
    std::printf("criterion %2d %-12s %s  worst %.3e (limit %.1e)  %.2fs", index, name.c_str(), r.pass ? "PASS" : "FAIL",
                r.metric, r.threshold, r.seconds);
    if (r.time_limit > 0) std::printf(" (limit %.0fs)", r.time_limit);
    std::printf("  %s\n", r.title.c_str());
    if (!r.pass) {
      ++failed;
      if (!r.error.empty()) std::printf("    error: %s\n", r.error.c_str());
      for (const auto& c : r.checks)
        if (!c.pass) std::printf("    %s: %.3e >= %.1e\n", c.label.c_str(), c.value, c.limit);
    }
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria pass\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
