#include "holo_cli/verify_suite.hpp"

#include <random>

#include <fmt/format.h>

#include "holo/error.hpp"
#include "holo/hyperpade.hpp"
#include "holo/padiczeta.hpp"

namespace holo::cli {

namespace {

using series::Rational;

const std::vector<Rational> kExponents = {Rational(1, 2), Rational(1, 3), Rational(2, 5), Rational(1, 7)};

CheckResult pade_suite() {
  std::size_t count = 0;
  for (const auto& nu : kExponents) {
    for (unsigned m = 0; m <= 8; ++m) {
      for (unsigned n = 0; n <= 8; ++n) {
        try {
          const auto r = hyperpade::pade_identity_check(m, n, nu, m + n + 3);
          if (r.remainder_valuation != m + n + 1 || r.leading_coefficient != r.expected_coefficient) {
            return {"pade remainders", false, fmt::format("m={} n={} nu={}", m, n, series::to_string(nu))};
          }
        } catch (const Error& e) {
          return {"pade remainders", false, e.what()};
        }
        ++count;
      }
    }
  }
  return {"pade remainders", true, fmt::format("{} cases, m, n <= 8", count)};
}

CheckResult generating_suite() {
  // A y^n coefficient has x-degree at most n, so 13 distinct x decide total order 12.
  std::size_t count = 0;
  for (const auto& nu : kExponents) {
    for (long i = -6; i <= 6; ++i) {
      const Rational x(i, 7);
      try {
        hyperpade::dihedral_generators(nu, x, 13);
      } catch (const Error& e) {
        return {"generating identity", false, e.what()};
      }
      ++count;
    }
  }
  return {"generating identity", true, fmt::format("{} (nu, x) pairs, total order 12", count)};
}

CheckResult ode_suite() {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 23);
  for (int i = 0; i < 20; ++i) {
    Rational nu(num(rng), den(rng)), x(num(rng), den(rng));
    nu.canonicalize();
    x.canonicalize();
    const auto pair = hyperpade::dihedral_generators(nu, x, 20);
    for (const auto* f : {&pair.A, &pair.B}) {
      const auto residual = hyperpade::dihedral_ode_residual(*f, nu, x);
      if (residual.order() < 18 || !residual.truncated(18).is_zero()) {
        return {"dihedral ODE", false, fmt::format("nu={} x={}", series::to_string(nu), series::to_string(x))};
      }
    }
  }
  return {"dihedral ODE", true, "20 random (nu, x), residual zero to order 18"};
}

CheckResult integrality_suite() {
  std::size_t count = 0;
  for (long r : {2L, 3L, 5L, 6L}) {
    for (unsigned n = 0; n <= 15; ++n) {
      const auto poly = hyperpade::dihedral_coefficient_poly(Rational(1, r), n);
      Rational scale = 1;
      for (unsigned j = 0; j + n <= 15 && j < poly.size(); ++j) {
        if (Rational(poly[j] * scale).get_den() != 1) {
          return {"A integrality", false, fmt::format("r={} x^{} y^{}", r, j, n)};
        }
        scale *= r * r;
        ++count;
      }
    }
  }
  return {"A integrality", true, fmt::format("{} monomials, r in {{2, 3, 5, 6}}, j + n <= 15", count)};
}

std::vector<CheckResult> modular_suite() {
  std::vector<CheckResult> out;
  const auto q = padiczeta::q_of_x(5);
  const bool q_ok = q[1] == 1 && q[2] == -24 && q[3] == 852 && q[4] == -35744;
  out.push_back({"q(x) inversion", q_ok, "1, -24, 852, -35744"});
  try {
    const auto k1 = padiczeta::h_series_and_types(1, 51);
    out.push_back({"E*_2(x) integrality", true, "n <= 50"});
    (void)k1;
  } catch (const Error& e) {
    out.push_back({"E*_2(x) integrality", false, e.what()});
  }
  try {
    const auto k2 = padiczeta::h_series_and_types(2, 41);
    out.push_back({"E'_-4(x) type [1..n]^5", k2.unit_columns.ok, "n <= 40"});
    out.push_back({"E'_-4(x) single column [1..5n] (reported)", true,
                   k2.single_column.ok ? "holds to n = 40"
                                       : fmt::format("fails at n = {}", k2.single_column.first_failure.value_or(0))});
  } catch (const Error& e) {
    out.push_back({"E'_-4(x) type [1..n]^5", false, e.what()});
  }
  return out;
}

}  // namespace

std::vector<CheckResult> run_verify_suite() {
  std::vector<CheckResult> out{pade_suite(), generating_suite(), ode_suite(), integrality_suite()};
  for (auto& r : modular_suite()) out.push_back(std::move(r));
  return out;
}

}  // namespace holo::cli
