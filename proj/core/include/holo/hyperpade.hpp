#pragma once

#include <complex>
#include <optional>
#include <cstddef>
#include <utility>
#include <vector>

#include "holo/series.hpp"

namespace holo::hyperpade {

using series::ExactSeries;
using series::Rational;

struct HypergeometricParams {
  Rational a;
  Rational b;
  Rational c;
};

/// Generalized binomial coefficient t(t-1)...(t-k+1)/k!.
Rational binomial(const Rational& t, unsigned long k);

/// Truncated 2F1(a, b; c; x). Terminates when a or b reaches a nonpositive
/// integer; POLE_ERROR if the lower parameter does so first.
ExactSeries hyper_2f1_poly(const HypergeometricParams& p, std::size_t order);

struct PadeReport {
  std::size_t remainder_valuation = 0;
  Rational leading_coefficient;
  Rational expected_coefficient;
};

/// Expands 2F1(-nu-n, -m; -m-n; x) - (1-x)^nu 2F1(nu-m, -n; -m-n; x) and checks
/// it against (-1)^m binom(n+nu, m+n+1)/binom(m+n, m) x^{m+n+1} + O(x^{m+n+2}).
PadeReport pade_identity_check(unsigned m, unsigned n, const Rational& nu, std::size_t order);

/// x-polynomial coefficients of the y^n coefficient of A_nu(x, y), i.e. of
/// 2F1(-nu-n, -n; -2n; x) binom(2n, n).
std::vector<Rational> dihedral_coefficient_poly(const Rational& nu, unsigned n);

struct DihedralPair {
  Rational nu;
  Rational x;
  ExactSeries A;
  ExactSeries B;
};

/// A_nu(x, .) and B_nu = A_{-nu}(x, .) as y-series, cross-checked against the
/// diagonal of (1 - xy)^nu / (1 - y - z + xyz).
DihedralPair dihedral_generators(const Rational& nu, const Rational& x, std::size_t order);

/// (1-4y+2xy+x^2y^2) f'' + 3(x^2y+x-2) f' + x^2(1-nu^2) f, order two below f.
ExactSeries dihedral_ode_residual(const ExactSeries& f, const Rational& nu, const Rational& x);

/// cos and sin dihedral companions divided by sqrt(1-4y+2xy+x^2y^2), using
/// principal branches of arccos and sqrt.
std::pair<std::complex<double>, std::complex<double>> companion_values(double nu, double x,
                                                                       std::complex<double> y);

/// For p | r: checks (p-1) v_p(coeff of y^n in A_nu) >= -n((p-1) v_p(r) + 1)
/// for n < order. Returns the first failing n, or nullopt.
std::optional<std::size_t> disc_property_violation(const Rational& nu, const Rational& x,
                                                   unsigned long p, std::size_t order);

struct LogFamily {
  /// False: series in y at general x. True: x = 2 with y = iz, series in z.
  bool pi_form = false;
  ExactSeries A;
  ExactSeries B;
  /// B - log(1-x) A, or B - pi A in the pi form. Empty when x >= 1 and not 2.
  std::vector<double> H;
};

/// The nu -> 0 limit pair A = Q^{-1/2}, B = 2A log(1 - x(1 + xy - sqrt Q)/2)
/// with Q = 1 - 4y + 2xy + x^2y^2. At x = 2 returns A(z) = (1-4z^2)^{-1/2},
/// B(z) = -2 A(z) arcsin(2z).
LogFamily log_family(const Rational& x, std::size_t order);

struct CatalanFamily {
  ExactSeries A;
  ExactSeries B;
  /// x-coefficients of D, summed 2-adically from its expansion in (1 + 16x).
  std::vector<Rational> D;
  /// 2 (B_n - D_n) / A_n for each n with A_n != 0.
  std::vector<std::pair<std::size_t, Rational>> g2_estimates;
  /// Bits to which every estimate is known.
  long precision_bits = 0;
};

/// x(1+16x)^2 F'' + (1+16x)^2 F' - 4F.
ExactSeries catalan_operator(const ExactSeries& f);

/// A, B and the G2 system. d_terms sets how many (1+16x)-terms of D are summed.
/// INCONSISTENT_G2 if two estimates differ 2-adically within the precision.
CatalanFamily catalan_family(std::size_t order, std::size_t d_terms = 48);

}  // namespace holo::hyperpade
