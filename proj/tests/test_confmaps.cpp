#include <doctest.h>

#include <cmath>
#include <random>

#include "holo/confmaps.hpp"
#include "holo/error.hpp"
#include "holo/hauptmodul.hpp"

using namespace holo;
using namespace holo::confmaps;

TEST_CASE("psi(-1/2, 1/2) is sin(2z)/2") {
  const auto m = AnalyticMap::psi({-0.5, 0.0}, {0.5, 0.0});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const cd z(u(rng), u(rng));
    CHECK(std::abs(m.eval(z) - std::sin(2.0 * z) / 2.0) < 1e-12);
  }
}

TEST_CASE("phi Taylor series matches the iterated quadratic maps") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    cd a(u(rng), u(rng)), b(3 * u(rng), 3 * u(rng));
    if (std::abs(a) >= std::abs(b)) std::swap(a, b);
    const auto s = AnalyticMap::phi(a, b).series_at_zero(8);
    const auto it = phi_by_iteration(a, b, 60, 8);
    for (std::size_t n = 0; n < 8; ++n) CHECK(std::abs(s[n] - it[n]) < 1e-9);
  }
}

TEST_CASE("phi fixes 0 and has derivative one times alpha scaling") {
  const auto m = AnalyticMap::phi({-0.5, 0.0}, {0.5, 0.0});
  CHECK(std::abs(m.eval(0.0)) < 1e-14);
  const double h = 1e-6;
  const auto d = (m.eval(h) - m.eval(-h)) / (2 * h);
  CHECK(std::abs(std::abs(d) - m.conformal_size()) < 1e-6);
}

TEST_CASE("Moebius template: exact series agrees with evaluation") {
  const auto m = AnalyticMap::mobius_circle_x();
  const auto s = m.exact_series_at_zero(25);
  REQUIRE(s.has_value());
  const cd z(0.05, 0.03);
  cd sum = 0.0, power = 1.0;
  for (std::size_t n = 0; n < 25; ++n) {
    sum += (*s)[n].get_d() * power;
    power *= z;
  }
  CHECK(std::abs(sum - m.eval(z)) < 1e-12);
  // x(q) = q + 24 q^2 + ..., q = z/(2z + 3), so m'(0) = 1/3.
  CHECK(m.conformal_size() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("lune inner map has derivative 14/29 at 0") {
  const auto s = lune_inner_series(4);
  CHECK(s[0] == 0);
  CHECK(s[1] == series::Rational(14, 29));
  CHECK(AnalyticMap::lune_x().conformal_size() == doctest::Approx(14.0 / 29.0).epsilon(1e-12));
}

TEST_CASE("scaled and rotated wrappers") {
  const auto base = AnalyticMap::psi({-0.5, 0.0}, {0.5, 0.0});
  const auto s = AnalyticMap::scaled(base, 2.0);
  const auto r = AnalyticMap::rotated(base, 0.7);
  const cd z(0.1, 0.2);
  CHECK(std::abs(s.eval(z) - base.eval(2.0 * z)) < 1e-14);
  CHECK(std::abs(r.eval(z) - base.eval(std::polar(1.0, 0.7) * z)) < 1e-14);
  CHECK(s.conformal_size() == doctest::Approx(2.0 * base.conformal_size()));
  CHECK_THROWS_AS(AnalyticMap::scaled(base, -1.0), Error);
}

TEST_CASE("log|m| stays finite far out for phi") {
  const auto m = AnalyticMap::scaled(AnalyticMap::phi({-0.5, 0.0}, {0.5, 0.0}), 4096.0);
  CHECK(std::isfinite(m.eval_log_abs(cd(0.3, 0.8))));
}

TEST_CASE("log_abs_sinh matches direct evaluation") {
  for (double x : {0.1, 1.0, 5.0}) CHECK(log_abs_sinh(x) == doctest::Approx(std::log(std::sinh(x))));
  CHECK(log_abs_sinh(cd(2000.0, 0.3)) == doctest::Approx(2000.0 - std::log(2.0)));
}

TEST_CASE("hauptmodul product and inverse") {
  const auto x = hauptmodul::x_of_q_series(6);
  CHECK(x[1] == 1);
  CHECK(x[2] == 24);
  const cd q(0.01, 0.02);
  const cd a = hauptmodul::x_of_q(q);
  CHECK(std::abs(hauptmodul::q_of_x(a) - q) < 1e-12);
  CHECK_THROWS_AS(hauptmodul::log_x_of_q(1.0), Error);
}
