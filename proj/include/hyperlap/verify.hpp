#pragma once

#include <string>
#include <vector>

namespace hyperlap {

struct CheckLine {
  std::string label;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string name;
  std::string title;
  bool pass = false;
  double metric = 0.0;     // worst observed value
  double threshold = 0.0;  // pinned tolerance
  double seconds = 0.0;
  double time_limit = 0.0; // 0: none
  std::vector<CheckLine> checks;
  std::string error;       // exception text when the suite aborted
};

// anchors, roundtrip, stokes, derivative, growth, support, reconstruct, orthant, pde, quadrature
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name);

}  // namespace hyperlap
