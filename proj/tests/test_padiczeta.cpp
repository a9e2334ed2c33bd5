#include <doctest.h>

#include "holo/error.hpp"
#include "holo/padiczeta.hpp"

using namespace holo;
using namespace holo::padiczeta;

TEST_CASE("Bernoulli numbers") {
  const auto b = bernoulli_numbers(12);
  CHECK(b[0] == 1);
  CHECK(b[1] == Rational(1, 2));
  CHECK(b[2] == Rational(1, 6));
  CHECK(b[4] == Rational(-1, 30));
  CHECK(b[6] == Rational(1, 42));
  CHECK(b[12] == Rational(-691, 2730));
  CHECK(b[5] == 0);
}

TEST_CASE("deprived zeta at negative odd integers") {
  // zeta(-1) = -1/12, (1 - 2) = -1; zeta(-3) = 1/120, (1 - 2^3) = -7.
  CHECK(deprived_zeta(-1) == Rational(1, 12));
  CHECK(deprived_zeta(-2) == Rational(-7, 120));
}

TEST_CASE("hauptmodul and its inverse") {
  const auto x = hauptmodul(6).coefficients;
  CHECK(x[1] == 1);
  CHECK(x[2] == 24);
  CHECK(x[3] == 300);
  const auto q = q_of_x(5);
  CHECK(q[1] == 1);
  CHECK(q[2] == -24);
  CHECK(q[3] == 852);
  CHECK(q[4] == -35744);
}

TEST_CASE("Eisenstein coefficients are odd divisor sums") {
  const auto e = eisenstein_star(-2, 10);
  CHECK(e.rational_constant);
  CHECK(e.expansion.weight == 4);
  CHECK(e.expansion.coefficients[0] == Rational(-7, 240));
  for (long n = 1; n < 10; ++n) {
    Rational s = 0;
    for (long d = 1; d <= n; d += 2) {
      if (n % d == 0) s += d * d * d;
    }
    CHECK(e.expansion.coefficients[n] == s);
  }
}

TEST_CASE("negative k is exact and bypasses the Kummer route") {
  const auto z = zeta2(-2, 20);
  REQUIRE(z.exact.has_value());
  CHECK(*z.exact == Rational(-7, 120));
  CHECK(padic::agreement(z.value, PadicApprox::from_rational(Rational(-7, 120), 20)) >= 20);
  CHECK_THROWS_AS(zeta2_route_a(-2, 20), Error);
  CHECK_THROWS_AS(kummer_approximant(-2, 3, 20), Error);
}

TEST_CASE("Kummer approximants gain a bit per step") {
  // s changes by 2^(t+1) per step and the value has valuation -3.
  for (unsigned t = 4; t <= 10; ++t) {
    const auto a = kummer_approximant(2, t, 20), b = kummer_approximant(2, t + 1, 20);
    CHECK(padic::agreement(a, b) >= static_cast<long>(t) - 4);
  }
}

TEST_CASE("zeta_2(5): routes agree and the low digits are stable") {
  const auto z = zeta2(2, 36);
  CHECK(z.value.valuation() == -3);
  CHECK(z.route_a_bits >= 16);
  const auto a = zeta2_route_a(2, 16), b = zeta2_route_b(2, 16);
  CHECK(padic::agreement(a.value, b.value) >= 16);
  CHECK(padic::agreement(z.value, b.value) >= 16);
}

TEST_CASE("k = 0 is rejected") { CHECK_THROWS_AS(zeta2(0, 10), Error); }

TEST_CASE("E*_2 integrality and the product growth") {
  const auto r = h_series_and_types(1, 31);
  CHECK(r.unit_columns.ok);
  for (std::size_t n = 1; n < r.product_valuations.size(); ++n) {
    CHECK(r.product_valuations[n] >= -12 * static_cast<long>(n) + std::min(0L, r.product_valuations[0]));
  }
}

TEST_CASE("zeta_5 scan finds no exceptions at height 10") {
  CHECK(zeta5_inequality_scan(10).empty());
  CHECK(scan_precision(10) > 0);
}

TEST_CASE("scan flags a planted value") {
  // Against zeta = 3/5 itself, 3/5 has infinite 2-adic closeness.
  const auto hits = zeta5_inequality_scan(10, PadicApprox::from_rational(Rational(3, 5), scan_precision(10) + 8));
  bool found = false;
  for (const auto& e : hits) found = found || (e.p == 3 && e.q == 5);
  CHECK(found);
}
