#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "holo/padic.hpp"
#include "holo/series.hpp"

namespace holo::padiczeta {

using padic::PadicApprox;
using series::ExactSeries;
using series::Integer;
using series::Rational;

struct QExpansion {
  ExactSeries coefficients;
  int weight = 0;
};

/// x(q) = q prod (1 + q^n)^24; order >= 5.
QExpansion hauptmodul(std::size_t order);
/// Compositional inverse q(x); order >= 5.
ExactSeries q_of_x(std::size_t order);

/// B_0..B_n by the Akiyama-Tanigawa recurrence (B_1 = +1/2).
std::vector<Rational> bernoulli_numbers(std::size_t n);

/// zeta(s)(1 - 2^-s) at s = 1 + 2k for k < 0, exactly.
Rational deprived_zeta(long k);

/// Weight -2k series zeta_2(1+2k)/2 + sum_n (sum_{d | n, d odd} d^(-2k-1)) q^n.
/// For k < 0 the constant is the rational deprived_zeta(k)/2; for k > 0 it is
/// a 2-adic number and the returned constant term is 0.
struct EisensteinSeries {
  QExpansion expansion;
  bool rational_constant = false;
};
EisensteinSeries eisenstein_star(long k, std::size_t order);

/// deprived_zeta at 1 + 2(k - 2^t), from unit power sums modulo 2^64.
PadicApprox kummer_approximant(long k, unsigned t, long absolute_bits);

struct RouteResult {
  PadicApprox value;
  unsigned steps = 0;  // Kummer exponent t, or number of x-coefficients used
};

/// Kummer limit, t increased until three successive approximants agree mod 2^bits.
RouteResult zeta2_route_a(long k, long absolute_bits);

struct OverconvergenceEstimate {
  Rational constant;   // c_n = -f_n / e_n, estimate of zeta_2(1+2k)/2
  long agreement = 0;  // v_2(c_n - c_{n+1})
  long claimed = 0;    // 12 n - v_2(e_n)
};

/// Estimates of the constant from x-coefficients 1..count of E*_{2k} E*_{-2k}.
std::vector<OverconvergenceEstimate> overconvergence_estimates(long k, std::size_t count);

/// Overconvergence route, as many coefficients as needed for the requested precision.
RouteResult zeta2_route_b(long k, long absolute_bits);

struct ZetaValue {
  PadicApprox value;
  std::optional<Rational> exact;  // k < 0
  long route_a_bits = 0;
  long route_b_bits = 0;
};

/// zeta_2(1 + 2k) to absolute precision bits. Positive k is computed by both
/// routes; ROUTE_DISAGREEMENT if they differ below their common precision.
ZetaValue zeta2(long k, long absolute_bits);

struct TypeReport {
  ExactSeries weight_positive;   // E*_{2k}(x)
  ExactSeries weight_negative;   // E'_{-2k}(x), constant dropped
  Rational product_constant_factor;  // E*_{2k}(0): the x^0 term of H is this times the constant
  std::vector<long> product_valuations;  // v_2 of the x^n coefficient of H, capped by precision
  long constant_bits = 0;
  series::DenominatorCheck single_column;  // lcm(1..(2k+1)n)
  series::DenominatorCheck unit_columns;   // lcm(1..n)^(2k+1)
};

/// Builds the x-expansions and checks integrality of E*_{2k}, the type
/// [1..n]^(2k+1) of E'_{-2k} and v_2(h_n) >= -12 n for the product H. The
/// single-column reading [1..(2k+1)n] is evaluated and reported, not enforced.
/// Throws TYPE_VIOLATION naming the first failing index.
TypeReport h_series_and_types(long k, std::size_t order);

struct Exception {
  long p = 0;
  long q = 1;
  long distance_valuation = 0;  // v_2(zeta_2(5) - p/q)
  double threshold = 0.0;       // 20 log_2 max(|p|, |q|)
};

/// Bits of zeta_2(5) the scan needs at this height.
long scan_precision(long max_height);

/// Coprime p/q with max(|p|, |q|) <= max_height and |zeta_2(5) - p/q|_2 <= H^-20.
std::vector<Exception> zeta5_inequality_scan(long max_height);
/// Same scan against a supplied value of zeta_2(5).
std::vector<Exception> zeta5_inequality_scan(long max_height, const PadicApprox& zeta5);

}  // namespace holo::padiczeta
