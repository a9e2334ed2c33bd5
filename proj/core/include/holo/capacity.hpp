#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "holo/confmaps.hpp"

namespace holo::capacity {

using confmaps::AnalyticMap;

struct IntegralResult {
  double value = 0.0;           // extrapolated, or the fine level on the cusp path
  double error_estimate = 0.0;  // |fine - coarse|
  double coarse = 0.0;
  double fine = 0.0;
  std::size_t grid_n = 0;
  bool cusp_path = false;
};

/// Average of log|m(z) - m(w)| over the torus. Offset trapezoid grids at
/// grid_n/2 and grid_n points, extrapolated assuming an O(1/n^2) residual.
/// Maps with a boundary cusp use Jensen's formula instead: log|m'(0)| plus the
/// singular mass at the cusp plus the boundary mean of the sum of log(1/|z|)
/// over the other preimages, enumerated through the level-2 modular orbit.
IntegralResult bost_charles_integral(const AnalyticMap& map, std::size_t grid_n);

/// Single offset-grid level without extrapolation.
double bost_charles_level(const AnalyticMap& map, std::size_t grid_n);

struct SupResult {
  double value = 0.0;
  double argmax_theta = 0.0;
};

/// max log|m(z)| over |z| = 1 by dense sampling and golden-section refinement
/// around the three largest local maxima.
SupResult sup_log_on_circle(const AnalyticMap& map, std::size_t grid_n);

struct PlaceLedger {
  std::vector<std::pair<AnalyticMap, double>> archimedean;
  double nonarch_log_radius_sum = 0.0;
  std::map<unsigned long, double> per_prime_log_radii;

  /// True when the sum equals the per-prime entries (when present).
  bool consistent(double tol = 1e-12) const;
};

/// log R_p = -(v_p(r) log p + log p/(p-1)) for p | r.
PlaceLedger padic_ledger_for_root(unsigned long r);

/// Radius of the circle traced by the cusp tail, in the local parameter q(x).
double cusp_tail_radius();

}  // namespace holo::capacity
