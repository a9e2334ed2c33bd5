#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holo/series.hpp"

namespace holo::dioph {

using series::Integer;
using series::Rational;

/// Nonzero rational as sign times a product of prime powers.
class FactoredRational {
 public:
  FactoredRational() = default;
  /// Factors q by trial division; q must be nonzero.
  static FactoredRational from_rational(const Rational& q);
  static FactoredRational prime_power(unsigned long p, const Integer& e);

  int sign() const noexcept { return sign_; }
  /// Nonzero exponents only.
  const std::map<unsigned long, Integer>& exponents() const noexcept { return exponents_; }
  Integer exponent(unsigned long p) const;
  bool is_one() const noexcept { return sign_ == 1 && exponents_.empty(); }

  /// Exact value; the exponents must fit in an unsigned long.
  Rational value() const;

  FactoredRational operator*(const FactoredRational& other) const;
  FactoredRational pow(const Integer& n) const;
  FactoredRational inverse() const;
  bool operator==(const FactoredRational& other) const = default;

  std::string to_string() const;

 private:
  void add(unsigned long p, const Integer& e);

  int sign_ = 1;
  std::map<unsigned long, Integer> exponents_;
};

/// h(x) = log max(|num|, |den|).
double height(const FactoredRational& x);

/// The dominant side of the height as coefficients c_p of sum c_p log p.
std::map<unsigned long, Integer> exact_log_height(const FactoredRational& x);

struct DirichletResult {
  Integer r;  // Q! N / q
  unsigned long q = 1;
  std::vector<Integer> p;
  std::vector<Integer> errors;  // |n_i - r p_i|
};

/// Pigeonhole rounding: some q <= Q and integers p_i satisfy |n_i - r p_i| <= r Q^(-1/t)
/// with r = Q! N / q. Exhaustive over q with p_i the nearest integer to n_i / r;
/// the inequality is checked exactly as |n_i - r p_i|^t Q <= r^t.
/// SEARCH_FAILURE if no q works.
DirichletResult dirichlet_round(const std::vector<Integer>& n, unsigned long Q, const Integer& N);

struct CosetDecomposition {
  FactoredRational a0;
  FactoredRational eta;
  Integer r;
  std::vector<Integer> p;
  double height_a0 = 0.0;
  double height_eta = 0.0;
  double generator_height_sum = 0.0;  // c9
  double height_bound = 0.0;          // c9 r Q^(-1/t)
};

/// gamma = prod xi_i^(n_i) written as a0 eta^r with eta = prod xi_i^(p_i).
/// SEARCH_FAILURE if h(a0) exceeds the bound.
CosetDecomposition coset_decompose(const std::vector<Integer>& gamma_exponents,
                                   const std::vector<FactoredRational>& generators, unsigned long Q,
                                   const Integer& N);

/// g(t) = c t^p (log t)^(-L) (L = 0 for a pure power), or a piecewise linear
/// table extended linearly past its last node.
struct GFunctionConfig {
  enum class Shape { PowerLog, Table };
  Shape shape = Shape::PowerLog;
  double c = 1.0;
  double power = 0.5;
  double log_power = 3.0;
  std::vector<std::pair<double, double>> table;  // (t, g(t)), t increasing

  /// c t^(1/(2d)) (log t)^(-3).
  static GFunctionConfig power_log(double c, unsigned d);
  static GFunctionConfig pure_power(double c, double p);

  double operator()(double t) const;
  /// Start of the increasing branch.
  double onset() const;
};

/// Place v: archimedean, or nonarchimedean with the given residual characteristic.
struct PlaceLabel {
  bool archimedean = true;
  unsigned long residual_characteristic = 0;

  static PlaceLabel parse(const std::string& text);  // "inf" or a prime
};

struct ChainInput {
  unsigned degree = 1;  // [K:Q]
  PlaceLabel place;
  GFunctionConfig g;
  std::vector<FactoredRational> generators;
  double epsilon = 0.5;
  double height_A = 0.0;
  double c10 = 1.0;
  std::optional<double> c11;  // default: smallest value valid at height_A
};

struct ChainResult {
  double c8 = 0.0;
  bool c8_clamped = false;  // 2/epsilon at or below g at the onset
  double c9 = 0.0;
  unsigned long Q = 0;
  unsigned long base = 2;
  unsigned long N_exponent = 0;
  Integer N;
  Integer r_min;  // (Q - 1)! N
  bool n_exceeds_factorial_square = false;
  double c11 = 0.0;
  double C_final = 0.0;
};

/// c8 = inf{x >= onset : g(x) >= 2/epsilon}, c9 = sum h(xi_i),
/// Q = ceil((2 c8 c9)^t), N the least power of the base exceeding
/// 2 c8 h(A) / (Q - 1)!, C_final = c11 (1 + h(A)). ONSET_ERROR if g
/// decreases inside the bisection bracket.
ChainResult effective_constant_chain(const ChainInput& in);

}  // namespace holo::dioph
