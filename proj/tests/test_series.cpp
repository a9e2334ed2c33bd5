#include <doctest.h>

#include <numeric>
#include <random>

#include "holo/error.hpp"
#include "holo/series.hpp"

using namespace holo;
using namespace holo::series;

namespace {

Rational factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

Integer naive_lcm(unsigned long n) {
  Integer l = 1;
  for (unsigned long i = 2; i <= n; ++i) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), i);
  return l;
}

ExactSeries random_series(std::mt19937_64& rng, std::size_t order, bool zero_constant, bool unit_constant) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  return ExactSeries::generate(order, [&](std::size_t n) {
    if (n == 0 && zero_constant) return Rational(0);
    if (n == 0 && unit_constant) return Rational(1);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
  });
}

}  // namespace

TEST_CASE("parse and print rationals") {
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("7") == 7);
  CHECK(to_string(Rational(5, 3)) == "5/3");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("p-adic valuation of rationals") {
  CHECK(padic_valuation(Rational(48, 5), 2) == 4);
  CHECK(padic_valuation(Rational(5, 48), 2) == -4);
  CHECK(padic_valuation(Rational(5, 48), 3) == -1);
  CHECK_FALSE(padic_valuation(Rational(0), 2).has_value());
}

TEST_CASE("exp has factorial reciprocals") {
  const auto e = exp(ExactSeries::variable(12));
  for (unsigned n = 0; n < 12; ++n) CHECK(e[n] == 1 / factorial(n));
}

TEST_CASE("log(1 + z) is the alternating harmonic series") {
  const auto l = log(ExactSeries::constant(1, 15) + ExactSeries::variable(15));
  CHECK(l[0] == 0);
  for (long n = 1; n < 15; ++n) CHECK(l[n] == Rational(n % 2 ? 1 : -1, n));
}

TEST_CASE("binomial series matches the falling-factorial formula") {
  const Rational nu(2, 5);
  const auto b = binomial_series(nu, 10);
  Rational c = 1;
  for (unsigned k = 0; k < 10; ++k) {
    CHECK(b[k] == c);
    c = c * (nu - k) / (k + 1);
  }
}

TEST_CASE("property: algebraic identities on random series") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t order = 9;
    const auto a = random_series(rng, order, false, true);
    const auto b = random_series(rng, order, false, false);
    const auto g = random_series(rng, order, true, false);
    CHECK(a * reciprocal(a) == ExactSeries::constant(1, order));
    CHECK(exp(log(a)) == a);
    CHECK(a * b == b * a);
    CHECK(derivative(integral(b)).truncated(order) == b);
    CHECK(power(a, Rational(1, 2)) * power(a, Rational(1, 2)) == a);
    CHECK(power(a, Rational(3)) == a * a * a);
    CHECK(compose(a * b, g) == compose(a, g) * compose(b, g));
    if (g[1] != 0) {
      const auto inv = reversion(g);
      CHECK(compose(g, inv) == ExactSeries::variable(order));
      CHECK(compose(inv, g) == ExactSeries::variable(order));
    }
    CHECK(rescale(rescale(b, 2), Rational(1, 2)) == b);
  }
}

TEST_CASE("reversion of z/(1-z) is z/(1+z)") {
  const std::size_t order = 10;
  const auto f = ExactSeries::generate(order, [](std::size_t n) { return Rational(n ? 1 : 0); });
  const auto g = reversion(f);
  for (std::size_t n = 1; n < order; ++n) CHECK(g[n] == Rational(n % 2 ? 1 : -1));
}

TEST_CASE("precondition failures") {
  CHECK_THROWS_AS(reciprocal(ExactSeries::variable(4)), Error);
  CHECK_THROWS_AS(reversion(ExactSeries::constant(1, 4)), Error);
  CHECK_THROWS_AS(log(ExactSeries::constant(2, 4)), Error);
}

TEST_CASE("mixed orders truncate to the smaller one") {
  CHECK((ExactSeries::variable(3) + ExactSeries::constant(1, 5)).order() == 3);
  CHECK((ExactSeries::variable(6) * ExactSeries::constant(2, 4)).order() == 4);
}

TEST_CASE("lcm_upto agrees with iterated lcm") {
  for (unsigned long n = 0; n <= 60; ++n) CHECK(lcm_upto(n) == naive_lcm(n));
}

TEST_CASE("tau: both forms agree and match hand values") {
  // Single column [1..n]: sigma_1 = 1, tau = 1.
  CHECK(tau(DenominatorType::from_matrix({{1}})) == 1);
  // Two rows [1..n][1..n]: sigma = (2, 2), tau = (2 + 3*2)/4 = 2.
  CHECK(tau(DenominatorType::from_matrix({{1, 1}, {1, 1}})) == 2);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> den(1, 6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + trial % 4;
    std::vector<std::pair<std::size_t, Rational>> cols;
    for (std::size_t u = 1; u <= m; ++u) cols.push_back({u, Rational(1, den(rng))});
    const auto b = DenominatorType::from_columns(m, cols);
    const auto f = tau_forms(b);
    CHECK(f.row_sum_form == f.closed_form);
  }
}

TEST_CASE("malformed staircase is a shape error") {
  try {
    DenominatorType::from_matrix({{1}, {0}, {1}});
    FAIL("expected SHAPE_ERROR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeError);
  }
}

TEST_CASE("denominator check on 1/n and 1/n^2") {
  const auto inv = ExactSeries::generate(20, [](std::size_t n) { return n ? Rational(1, n) : Rational(0); });
  CHECK(check_denominator_type(inv, {1}, 0, 19).ok);
  const auto inv2 = ExactSeries::generate(20, [](std::size_t n) { return n ? Rational(1, n * n) : Rational(0); });
  const auto single = check_denominator_type(inv2, {1}, 0, 19);
  CHECK_FALSE(single.ok);
  CHECK(single.first_failure == 2u);
  CHECK(check_denominator_type(inv2, {1, 1}, 0, 19).ok);
  CHECK(check_denominator_type(inv2, {1}, 1, 19).ok);
}
