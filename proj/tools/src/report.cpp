#include "holo_cli/report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace holo::cli {

namespace {

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::string fmt6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.6g}", v);
}

std::string with_error(double value, double error) {
  return fmt::format("{} +- {:.2g}", fmt6(value), error);
}

Json report_json(const ScenarioFile& file, const holobound::BoundReport& bound,
                 const std::optional<ThresholdOutcome>& threshold) {
  Json places = Json::array();
  for (const auto& p : bound.places) {
    Json place{{"label", p.label}, {"numerator", p.numerator}, {"error", p.error}, {"log_size", p.log_size}};
    if (p.argmax_theta) place["argmax_theta"] = *p.argmax_theta;
    places.push_back(place);
  }
  Json j{{"scenario", file.name},
         {"numerator", bound.numerator},
         {"numerator_error", bound.numerator_error},
         {"denominator", bound.denominator},
         {"exponent_term", bound.exponent_term},
         {"bound", finite_or_null(bound.bound)},
         {"bound_error", finite_or_null(bound.bound_error)},
         {"feasible", bound.feasible},
         {"side_condition_ok", bound.side_condition_ok},
         {"places", places}};
  if (threshold) {
    const auto& t = threshold->report;
    j["kappa_threshold"] = Json{{"target_m", threshold->target_m},
                                {"kappa", t.kappa},
                                {"kappa_low", t.kappa_low},
                                {"kappa_high", finite_or_null(t.kappa_high)},
                                {"limit_bound", finite_or_null(t.limit_bound)},
                                {"place", bound.places.empty() ? Json(nullptr) : Json(t.unknown_place)}};
  } else {
    j["kappa_threshold"] = nullptr;
  }
  j["provenance"] = Json{{"grid_n", file.grid_n}, {"toolkit_version", kToolkitVersion}};
  return j;
}

std::string report_text(const ScenarioFile& file, const holobound::BoundReport& bound,
                        const std::optional<ThresholdOutcome>& threshold) {
  std::string out = fmt::format("scenario: {}\n", file.name);
  for (const auto& p : bound.places) {
    out += fmt::format("  place {}: numerator {}, log size {}", p.label, with_error(p.numerator, p.error),
                       fmt6(p.log_size));
    if (p.argmax_theta) out += fmt::format(", argmax theta {}", fmt6(*p.argmax_theta));
    out += "\n";
  }
  out += fmt::format("numerator: {}\n", with_error(bound.numerator, bound.numerator_error));
  out += fmt::format("denominator: {}\n", fmt6(bound.denominator));
  if (bound.feasible) {
    out += fmt::format("bound: {}\n", with_error(bound.bound, bound.bound_error));
  } else {
    out += "bound: infeasible (denominator <= 0)\n";
  }
  if (!bound.side_condition_ok) out += "side condition: violated\n";
  if (threshold) {
    const auto& t = threshold->report;
    out += fmt::format("kappa threshold (m = {}): {} in [{}, {}]\n", threshold->target_m, fmt6(t.kappa),
                       fmt6(t.kappa_low), fmt6(t.kappa_high));
    out += fmt::format("kappa -> infinity bound: {}\n", fmt6(t.limit_bound));
  }
  out += fmt::format("grid_n: {}, toolkit {}\n", file.grid_n, kToolkitVersion);
  return out;
}

}  // namespace holo::cli
