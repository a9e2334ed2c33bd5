#include "holo_cli/regressions.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "holo/capacity.hpp"
#include "holo/error.hpp"
#include "holo/padiczeta.hpp"
#include "holo_cli/report.hpp"
#include "holo_cli/scenario_io.hpp"

namespace holo::cli {

namespace {

CheckResult within(const std::string& name, double value, const Tolerance& t) {
  const bool ok = std::abs(value - t.value) <= t.tol;
  return {name, ok, fmt::format("{} (expected {} +- {})", fmt6(value), fmt6(t.value), t.tol)};
}

CheckResult within(const std::string& name, double value, double target, double tol) {
  return within(name, value, Tolerance{target, tol});
}

void fixture_checks(const std::filesystem::path& path, std::vector<CheckResult>& out) {
  const std::string stem = path.stem().string();
  const ScenarioFile file = load_scenario(path);
  if (!file.expect) return;
  const auto& e = *file.expect;
  const auto scenario = to_scenario(file);
  const auto assembly = holobound::assemble(scenario);
  if (e.bound) {
    const auto r = holobound::evaluate_bound(scenario, assembly);
    out.push_back(within(stem + ": bound", r.bound, *e.bound));
  }
  if (e.kappa || e.kappa_range || e.limit_bound) {
    const std::size_t target = file.target_m.value_or(file.m);
    try {
      const auto t = holobound::kappa_threshold(scenario, assembly, target);
      if (e.limit_bound) out.push_back(within(stem + ": kappa -> infinity bound", t.limit_bound, *e.limit_bound));
      if (e.kappa) out.push_back(within(stem + ": kappa threshold", t.kappa, *e.kappa));
      if (e.kappa_range) {
        const auto [lo, hi] = *e.kappa_range;
        out.push_back({stem + ": kappa threshold range", t.kappa >= lo && t.kappa <= hi,
                       fmt::format("{} (expected in [{}, {}])", fmt6(t.kappa), fmt6(lo), fmt6(hi))});
      }
    } catch (const Error& err) {
      out.push_back({stem + ": kappa threshold", false, err.what()});
    }
  }
}

}  // namespace

std::vector<CheckResult> run_fixture_expectations(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CheckResult> out;
  for (const auto& f : files) {
    try {
      fixture_checks(f, out);
    } catch (const Error& err) {
      out.push_back({f.stem().string(), false, err.what()});
    }
  }
  return out;
}

std::vector<CheckResult> run_builtin_regressions(std::size_t grid_n) {
  using capacity::bost_charles_integral;
  using confmaps::AnalyticMap;
  std::vector<CheckResult> out;
  const auto identity = bost_charles_integral(AnalyticMap::identity(), grid_n);
  out.push_back({"BC integral, identity map", std::abs(identity.value) < 1e-6, fmt::format("{:.3g}", identity.value)});
  const auto circle = bost_charles_integral(AnalyticMap::mobius_circle_x(), grid_n);
  out.push_back(within("BC integral, circle template", circle.value, 2.13322, 5e-4));
  const auto lune = bost_charles_integral(AnalyticMap::lune_x(), grid_n);
  out.push_back(within("BC integral, lune template", lune.value, 3.92881, 1e-3));
  try {
    const auto a = padiczeta::zeta2_route_a(2, 16);
    const auto b = padiczeta::zeta2_route_b(2, 16);
    const long agree = padic::agreement(a.value, b.value);
    out.push_back({"zeta_2(5) routes agree mod 2^16", agree >= 16,
                   fmt::format("{} bits, {}", agree, b.value.truncated(16).digits())});
  } catch (const Error& err) {
    out.push_back({"zeta_2(5) routes agree mod 2^16", false, err.what()});
  }
  return out;
}

}  // namespace holo::cli
