#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace shtarkov {

/// Outcome of one verification battery. worst_violation is the signed
/// slack of the most violated assertion: passed iff it is <= tolerance.
/// detail pins the offending instance when a check fails.
struct CheckReport {
  std::string name;
  std::int64_t instances_tested = 0;
  double worst_violation = -std::numeric_limits<double>::infinity();
  double tolerance = 0.0;
  bool passed = true;
  std::string detail;

  void record(double violation, const std::string& instance = {}) {
    ++instances_tested;
    if (violation > worst_violation) {
      worst_violation = violation;
      detail = instance;
    }
    passed = worst_violation <= tolerance;
  }
};

}  // namespace shtarkov
