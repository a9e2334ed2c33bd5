#pragma once

#include <optional>
#include <string>

#include "holo/holobound.hpp"
#include "holo_cli/scenario_io.hpp"

namespace holo::cli {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Six significant digits; "inf" and "-inf" for infinities.
std::string fmt6(double v);
/// Value with its error estimate, e.g. "4.43206 +- 1.2e-07".
std::string with_error(double value, double error);

struct ThresholdOutcome {
  holobound::ThresholdReport report;
  std::size_t target_m = 0;
};

/// Report JSON: the bound report fields, the optional threshold and provenance.
Json report_json(const ScenarioFile& file, const holobound::BoundReport& bound,
                 const std::optional<ThresholdOutcome>& threshold);

/// Human-readable report with six significant digits.
std::string report_text(const ScenarioFile& file, const holobound::BoundReport& bound,
                        const std::optional<ThresholdOutcome>& threshold);

}  // namespace holo::cli
