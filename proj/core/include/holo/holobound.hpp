#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "holo/confmaps.hpp"
#include "holo/series.hpp"

namespace holo::holobound {

using confmaps::AnalyticMap;
using series::Rational;

enum class NumeratorSource { Published, Quadrature, SupNorm };

/// Archimedean place: contributes a numerator term and log|phi'(0)|.
struct ArchPlace {
  std::string label;
  std::optional<AnalyticMap> map;
  NumeratorSource source = NumeratorSource::Quadrature;
  double published_numerator = 0.0;
  std::optional<double> log_size;  // overrides log|phi'(0)| of the map
};

/// Non-archimedean place with phi_v(z) = c z: sup log|phi_v| = log|phi_v'(0)| = log_radius.
struct NonarchPlace {
  std::string label;
  double log_radius = 0.0;
};

/// Place of simultaneous approximation with exponent kappa (unset = unknown or limit).
struct ApproxPlace {
  std::string label;
  double log_rho_inv = 0.0;
  std::optional<double> kappa;
};

/// How the approximation exponents enter the denominator.
enum class Coupling {
  SingleExponent,  // (1 - gamma)(2/kappa - (1 - gamma)/kappa^2) log(1/rho)
  Simultaneous,    // sum log(1/rho) - (sum kappa - E)^2 / sum(kappa^2 / log(1/rho))
};

struct Scenario {
  std::string name;
  std::size_t m = 1;
  std::vector<std::size_t> m_nu;   // counts per power; empty means derived from gamma
  std::optional<Rational> gamma;   // share of the rational functions
  Rational tau = 0;
  Rational tau_sharp = 0;
  std::vector<ArchPlace> arch;
  std::vector<NonarchPlace> nonarch;
  std::vector<ApproxPlace> approx;
  Coupling coupling = Coupling::SingleExponent;
  std::size_t grid_n = 4096;
};

/// Throws PreconditionViolation or NanInput.
void validate(const Scenario& s);

/// E = sum nu m_nu / m, or 1 - gamma when only gamma is given.
double exponent_offset(const Scenario& s);

struct PlaceValue {
  std::string label;
  double numerator = 0.0;
  double error = 0.0;
  double log_size = 0.0;
  std::optional<double> argmax_theta;  // for sup-norm numerators
};

/// Numerator and size terms, computed once per scenario.
struct Assembly {
  std::vector<PlaceValue> places;
  double numerator = 0.0;
  double numerator_error = 0.0;
  double log_size_sum = 0.0;
};

Assembly assemble(const Scenario& s);

struct BoundReport {
  double numerator = 0.0;
  double numerator_error = 0.0;
  double denominator = 0.0;
  double exponent_term = 0.0;  // subtracted in the denominator
  double bound = 0.0;          // +inf when infeasible
  double bound_error = 0.0;
  bool feasible = false;
  bool side_condition_ok = true;
  std::optional<double> kappa_threshold;
  std::vector<PlaceValue> places;
};

/// Term subtracted from the denominator for the given exponents (empty = kappa -> infinity).
double exponent_term(const Scenario& s, const std::vector<std::optional<double>>& kappas);

/// kappa_u <= log(1/rho_u) sum(kappa^2/log(1/rho)) / (sum kappa - E) for every u.
bool side_condition(const Scenario& s, const std::vector<std::optional<double>>& kappas);

BoundReport evaluate_bound(const Scenario& s);
BoundReport evaluate_bound(const Scenario& s, const Assembly& a);

struct ThresholdReport {
  double kappa = 0.0;
  double kappa_low = 0.0;   // with the numerator lowered by its error
  double kappa_high = 0.0;  // with the numerator raised by its error
  double limit_bound = 0.0;
  std::size_t unknown_place = 0;
};

/// Smallest kappa beyond which the bound stays below target_m, for the single
/// approximation place whose kappa is unset. Throws NoThreshold when the
/// kappa -> infinity bound does not go below target_m.
ThresholdReport kappa_threshold(const Scenario& s, std::size_t target_m);
ThresholdReport kappa_threshold(const Scenario& s, const Assembly& a, std::size_t target_m);

struct OptimalQ {
  double q = 0.0;
  std::vector<double> chi;  // (kappa_u - epsilon) q / log(1/rho_u), 0 when rho_u = 1
  bool chi_below_m = false;
};

/// Minimizer of the quadratic exponent objective over q = h(beta)/D.
OptimalQ optimal_q(const Scenario& s, double epsilon);

}  // namespace holo::holobound
