#pragma once

#include <filesystem>
#include <vector>

#include "holo_cli/verify_suite.hpp"

namespace holo::cli {

/// Expectations carried by every fixture file in dir, in file-name order.
std::vector<CheckResult> run_fixture_expectations(const std::filesystem::path& dir);

/// Published quadrature values and 2-adic agreements that need no fixture file.
std::vector<CheckResult> run_builtin_regressions(std::size_t grid_n);

}  // namespace holo::cli
