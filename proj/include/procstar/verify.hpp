#pragma once

#include <string>
#include <vector>

#include "procstar/json_io.hpp"

namespace procstar {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured quantity (defect, distance, norm, ...)
  double threshold = 0.0;  // what it was compared against
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  bool pass = true;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  void add(CheckResult c);
};

/// circle-norm, peter-weyl, witness-soundness, heisenberg-relations, compatibility, seminorm-axioms,
/// seminorm-monotonicity, z2-range, u3-free, truncated-fullness, heisenberg-separation.
const std::vector<std::string>& suite_names();
/// Throws UsageError for an unknown name.
SuiteResult run_suite(const std::string& name, const Config& cfg = {});

Json to_json(const SuiteResult& r);

}  // namespace procstar
