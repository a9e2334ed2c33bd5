#pragma once

#include <string>
#include <vector>

namespace holo::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Exact identity checks: Pade remainders, the bivariate generating identity,
/// the dihedral ODE, coefficient integrality and the modular denominator types.
std::vector<CheckResult> run_verify_suite();

}  // namespace holo::cli
