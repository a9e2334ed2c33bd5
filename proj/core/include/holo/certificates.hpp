#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "holo/confmaps.hpp"
#include "holo/holobound.hpp"
#include "holo/series.hpp"

namespace holo::dioph {

using series::Rational;

/// Radii and power counts swept by the certificate searches.
struct CertificateGrid {
  std::vector<double> radii;
  unsigned k_min = 1;
  unsigned k_max = 1;
  std::size_t grid_n = 1024;
};

/// Radii 5 * 2^i up to 1280 and 1 <= k < r.
CertificateGrid default_binomial_grid(unsigned long r);
/// Radii 2^i from 4 to 4096 and 1 <= k <= k_max.
CertificateGrid default_pi_grid(unsigned k_max);

struct CertificatePoint {
  double R = 0.0;
  unsigned k = 0;
  std::optional<double> kappa;            // threshold at the central numerator
  std::optional<double> kappa_certified;  // threshold at numerator + error
  bool feasible = false;
  double numerator = 0.0;
  double denominator = 0.0;  // kappa -> infinity
  double log_rho_inv = 0.0;
};

struct Certificate {
  double kappa_eff = 0.0;  // best certified threshold
  double kappa_central = 0.0;
  double R_star = 0.0;
  unsigned k_star = 0;
  holobound::Scenario scenario;  // at (R_star, k_star), exponent unset
  std::vector<CertificatePoint> points;
  std::optional<double> feasibility_radius;  // pi search: where k_star turns feasible
};

/// Overconvergent and second singularity (1 + sqrt a)^-2, (1 - sqrt a)^-2 of
/// the dihedral equation at x = 1 - a.
std::pair<double, double> root_singularities(const Rational& a);

/// -log of the largest rho with sup_{|z| = rho} |map(z)| < modulus.
double measured_log_rho_inv(const confmaps::AnalyticMap& map, double modulus, std::size_t grid_n);

/// Scenario for {1, H, ..., H^k} at the r-th root of a with map phi(R z).
holobound::Scenario binomial_scenario(const Rational& a, unsigned long r, double R, unsigned k,
                                      std::size_t grid_n);
/// Scenario for {1, H, ..., H^k} at pi with map phi_{-1/2,1/2}(R z).
holobound::Scenario pi_scenario(double R, unsigned k, std::size_t grid_n);

/// tau of the type [1..n][1..n/2]...[1..n/k] on k + 1 rows.
Rational pi_system_tau(unsigned k);

/// Best certified kappa over the grid. INFEASIBLE_EVERYWHERE if no point has a
/// positive kappa -> infinity denominator.
Certificate binomial_certificate(const Rational& a, unsigned long r, const CertificateGrid& grid);
Certificate pi_measure_search(unsigned k_max, const CertificateGrid& grid);

/// Radius at which the kappa -> infinity denominator of the pi scenario turns
/// positive, by bisection in log R over [R_low, R_high].
std::optional<double> pi_feasibility_radius(unsigned k, double R_low, double R_high, std::size_t grid_n);

/// Columns r, R, k, kappa, feasible, numerator, denominator.
std::string sweep_csv(const std::string& label, const Certificate& c);

}  // namespace holo::dioph
