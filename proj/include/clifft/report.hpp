#pragma once

#include <limits>
#include <map>
#include <string>

namespace clifft {

/// Outcome of one named numerical check. For inequality checks lhs and rhs
/// are the two sides; for deviation checks lhs is the measured deviation and
/// rhs the allowance. The predicate behind `pass` is documented per check.
struct VerificationReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 1.0;
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, double> diagnostics;

  static double compute_ratio(double lhs, double rhs) {
    if (rhs == 0.0) {
      if (lhs == 0.0) return 1.0;
      return lhs > 0.0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    }
    return lhs / rhs;
  }
};

}  // namespace clifft
