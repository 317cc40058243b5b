#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fsi/common.hpp"

namespace fsi::bench {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;  ///< 0: no runtime bound
  /// Every iteration count the check observed, in a fixed order.
  std::vector<Index> iterations;
};

inline constexpr int n_criteria = 9;

/// Runs the selected criteria (all when `only` is empty) in order and
/// prints one PASS/FAIL line per criterion to `out` as soon as it is known.
/// Criterion 9 reruns 4 to 7 and compares their iteration counts with the
/// first run. A criterion that throws fails with the message as detail.
std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::vector<int>& only = {});

std::string format_result(const CriterionResult& r);

}  // namespace fsi::bench
