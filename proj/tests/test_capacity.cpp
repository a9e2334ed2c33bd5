#include <doctest.h>

#include <cmath>

#include "holo/capacity.hpp"

using namespace holo;
using namespace holo::capacity;
using confmaps::cd;

TEST_CASE("integral of c z is log c") {
  // Mean of log|z - w| over the torus vanishes, leaving log|c|.
  for (double c : {0.5, 1.0, 3.0}) {
    const auto r = bost_charles_integral(AnalyticMap::custom_series({0.0, c}), 512);
    CHECK(r.value == doctest::Approx(std::log(c)).epsilon(1e-6));
  }
}

TEST_CASE("integral of z + z^2 / 4 by Jensen") {
  // m(z) - m(w) = (z - w)(1 + (z + w)/4); log|1 + u/4| has mean 0 for |u| <= 2.
  const auto r = bost_charles_integral(AnalyticMap::custom_series({0.0, 1.0, 0.25}), 1024);
  CHECK(std::abs(r.value) < 1e-6);
}

TEST_CASE("circle template by Jensen") {
  const auto r = bost_charles_integral(AnalyticMap::mobius_circle_x(), 4096);
  CHECK(r.cusp_path);
  CHECK(r.value == doctest::Approx(2.133772).epsilon(2e-6));
}

TEST_CASE("levels converge") {
  const auto m = AnalyticMap::phi({-0.5, 0.0}, {0.5, 0.0});
  const double a = bost_charles_level(m, 256), b = bost_charles_level(m, 512);
  CHECK(std::abs(a - b) < 1e-3);
}

TEST_CASE("sup of log|z^3| on the circle") {
  const auto r = sup_log_on_circle(AnalyticMap::custom_series({0.0, 2.0}), 256);
  CHECK(r.value == doctest::Approx(std::log(2.0)));
  const auto s = sup_log_on_circle(AnalyticMap::custom_series({0.0, 1.0, 0.5}), 256);
  // |z + z^2/2| peaks at z = 1 with value 3/2.
  CHECK(s.value == doctest::Approx(std::log(1.5)).epsilon(1e-9));
  CHECK(std::abs(std::remainder(s.argmax_theta, 2 * M_PI)) < 1e-4);
}

TEST_CASE("p-adic ledger for r = 12") {
  const auto l = padic_ledger_for_root(12);
  CHECK(l.consistent());
  const double two = -(2 * std::log(2.0) + std::log(2.0));
  const double three = -(std::log(3.0) + std::log(3.0) / 2);
  CHECK(l.per_prime_log_radii.at(2) == doctest::Approx(two));
  CHECK(l.per_prime_log_radii.at(3) == doctest::Approx(three));
  CHECK(l.nonarch_log_radius_sum == doctest::Approx(two + three));
}
