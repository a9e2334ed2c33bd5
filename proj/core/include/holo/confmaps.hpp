#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "holo/series.hpp"

namespace holo::confmaps {

using cd = std::complex<double>;

enum class MapKind { Psi, Phi, MobiusCircleX, LuneX, Scaled, Rotated, CustomSeries };

std::string kind_name(MapKind kind);

/// Per-point data that lets log|m(z) - m(w)| be formed without overflow.
struct Node {
  cd point;   // argument in the innermost coordinate
  cd value;   // m(z), possibly infinite for huge arguments
  cd aux;     // Z = z/sqrt(alpha beta) for psi, s = sqrt(u(u - z tanh(u)/alpha)) for phi
};

/// Closed-form analytic map fixing 0.
class AnalyticMap {
 public:
  /// psi(z) = ((a+b)/2)(1 - cosh(z/c)) + c sinh(z/c), c = sqrt(a b).
  static AnalyticMap psi(cd alpha, cd beta);
  /// phi(z) = a(1 - sinh^2(sqrt(u(u - z tanh(u)/a)))/sinh^2 u) with the
  /// principal u = atanh(sqrt(a/b)).
  static AnalyticMap phi(cd alpha, cd beta);
  static AnalyticMap phi_with_branch(cd alpha, cd beta, cd u);
  /// x(z / (2z + 3)).
  static AnalyticMap mobius_circle_x();
  /// x(psi(z)) with psi(z) = (29/63)(1 + z - sqrt(1 - (82/841) z + z^2)).
  static AnalyticMap lune_x();
  /// inner(R z).
  static AnalyticMap scaled(const AnalyticMap& inner, double R);
  /// inner(e^{i theta} z).
  static AnalyticMap rotated(const AnalyticMap& inner, double theta);
  /// Polynomial with the given coefficients.
  static AnalyticMap custom_series(std::vector<cd> coefficients);
  static AnalyticMap identity();

  MapKind kind() const;
  std::string describe() const;

  cd eval(cd z) const;
  /// log|m(z)|, finite beyond the double range for psi and phi.
  double eval_log_abs(cd z) const;

  Node node(cd z) const;
  /// log|m(a) - m(b)| from precomputed nodes.
  double log_abs_difference(const Node& a, const Node& b) const;

  /// Taylor coefficients at 0. Exact templates are converted from rationals,
  /// psi and phi use Cauchy sampling on a circle.
  std::vector<cd> series_at_zero(std::size_t order) const;
  /// Exact expansion for the Moebius and lune templates.
  std::optional<series::ExactSeries> exact_series_at_zero(std::size_t order) const;

  /// |m'(0)|.
  double conformal_size() const;
  /// Angle of a boundary point where the map runs into a cusp of x(q).
  std::optional<double> boundary_cusp_angle() const;

  struct Impl;

 private:
  explicit AnalyticMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Inner circle map of the lune template.
series::ExactSeries lune_inner_series(std::size_t order);
cd lune_inner(cd z);

/// Expansion of h_0 o h_1 o ... o h_{depth-1} with h_b(z) = z - z^2/(4 b) and
/// (a, b) -> (2b(1 - sqrt(1 - a/b)), 2b(1 + sqrt(1 - a/b))). NONCONVERGENCE
/// if depth and depth - 1 differ by more than 1e-9 in a retained coefficient.
std::vector<cd> phi_by_iteration(cd alpha, cd beta, std::size_t depth, std::size_t order);

/// log|sinh(x)| without overflow.
double log_abs_sinh(cd x);

}  // namespace holo::confmaps
