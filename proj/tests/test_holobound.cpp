#include <doctest.h>

#include <cmath>

#include "holo/error.hpp"
#include "holo/holobound.hpp"

using namespace holo;
using namespace holo::holobound;

namespace {

Scenario circle() {
  Scenario s;
  s.name = "circle";
  s.m = 6;
  s.gamma = Rational(1, 6);
  s.tau = Rational(175, 36);
  ArchPlace a;
  a.label = "inf";
  a.map = AnalyticMap::mobius_circle_x();
  a.source = NumeratorSource::Published;
  a.published_numerator = 2.13322;
  s.arch = {a};
  s.nonarch = {{"2", 12 * std::log(2.0)}};
  return s;
}

}  // namespace

TEST_CASE("bound is numerator over log sizes minus tau") {
  const auto s = circle();
  const auto r = evaluate_bound(s);
  const double num = 2.13322 + 12 * std::log(2.0);
  const double den = std::log(1.0 / 3.0) + 12 * std::log(2.0) - 175.0 / 36;
  CHECK(r.feasible);
  CHECK(r.bound == doctest::Approx(num / den).epsilon(1e-12));
}

TEST_CASE("single-exponent threshold solves the quadratic in E/kappa") {
  auto s = circle();
  const double L = 12 * std::log(2.0);
  s.approx = {{"2", L, std::nullopt}};
  const auto t = kappa_threshold(s, 6);
  // L (2u - u^2) = S - tau - N/m with u = E/kappa.
  const double E = 5.0 / 6, N = 2.13322 + L, S = std::log(1.0 / 3.0) + L, tau = 175.0 / 36;
  const double D = S - tau - N / 6;
  const double u = 1 - std::sqrt(1 - D / L);
  CHECK(t.kappa == doctest::Approx(E / u).epsilon(1e-9));
  CHECK(t.limit_bound == doctest::Approx(evaluate_bound(circle()).bound));
}

TEST_CASE("fixed exponent reproduces the threshold bound") {
  auto s = circle();
  s.approx = {{"2", 12 * std::log(2.0), std::nullopt}};
  const double k = kappa_threshold(s, 6).kappa;
  s.approx[0].kappa = k * (1 + 1e-9);
  CHECK(evaluate_bound(s).bound < 6.0);
  s.approx[0].kappa = k * (1 - 1e-6);
  CHECK(evaluate_bound(s).bound > 6.0);
}

TEST_CASE("simultaneous coupling with one place matches the single form") {
  auto s = circle();
  s.m_nu = {5, 1};
  s.approx = {{"2", 12 * std::log(2.0), 30.0}};
  const double single = evaluate_bound(s).bound;
  s.coupling = Coupling::Simultaneous;
  CHECK(evaluate_bound(s).bound == doctest::Approx(single).epsilon(1e-12));
}

TEST_CASE("exponent offset from m_nu and from gamma") {
  auto s = circle();
  CHECK(exponent_offset(s) == doctest::Approx(5.0 / 6));
  s.m_nu = {2, 2, 2};
  CHECK(exponent_offset(s) == doctest::Approx(1.0));
}

TEST_CASE("infeasible scenario reports an infinite bound") {
  auto s = circle();
  s.tau = 20;
  const auto r = evaluate_bound(s);
  CHECK_FALSE(r.feasible);
  CHECK(std::isinf(r.bound));
}

TEST_CASE("no threshold when the limit bound stays above the target") {
  auto s = circle();
  s.approx = {{"2", 12 * std::log(2.0), std::nullopt}};
  try {
    kappa_threshold(s, 4);
    FAIL("expected NO_THRESHOLD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoThreshold);
  }
}

TEST_CASE("validation rejects NaN and empty places") {
  auto s = circle();
  s.arch[0].published_numerator = std::nan("");
  CHECK_THROWS_AS(evaluate_bound(s), Error);
  auto zero_m = circle();
  zero_m.m = 0;
  CHECK_THROWS_AS(validate(zero_m), Error);
}

TEST_CASE("optimal q minimizes the quadratic objective") {
  auto s = circle();
  s.approx = {{"2", 12 * std::log(2.0), 30.0}};
  const auto q = optimal_q(s, 0.0);
  CHECK(q.q > 0.0);
  REQUIRE(q.chi.size() == 1);
  CHECK(q.chi[0] == doctest::Approx(30.0 * q.q / (12 * std::log(2.0))));
}
