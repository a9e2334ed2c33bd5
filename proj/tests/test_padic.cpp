#include <doctest.h>

#include <random>

#include "holo/error.hpp"
#include "holo/padic.hpp"

using namespace holo;
using namespace holo::padic;

TEST_CASE("from_rational normalizes valuation and unit") {
  const auto x = PadicApprox::from_rational(Rational(12, 5), 20);
  CHECK(x.valuation() == 2);
  CHECK(x.absolute_precision() == 20);
  CHECK((x.unit_part() * 5 - 3) % (Integer(1) << 18) == 0);
  const auto z = PadicApprox::from_rational(Rational(64), 5);
  CHECK(z.is_zero());
  CHECK(z.absolute_precision() == 5);
}

TEST_CASE("property: arithmetic matches exact rationals") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-500, 500), den(1, 300);
  const long bits = 40;
  for (int trial = 0; trial < 200; ++trial) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    if (a == 0 || b == 0) continue;
    if (*series::padic_valuation(a, 2) < -4 || *series::padic_valuation(b, 2) < -4) continue;
    const auto pa = PadicApprox::from_rational(a, bits), pb = PadicApprox::from_rational(b, bits);
    const auto check = [&](const PadicApprox& got, const Rational& exact) {
      const auto want = PadicApprox::from_rational(exact, got.absolute_precision());
      CHECK(agreement(got, want) >= got.absolute_precision());
    };
    check(pa + pb, a + b);
    check(pa - pb, a - b);
    check(pa * pb, a * b);
    check(pa / pb, a / b);
  }
}

TEST_CASE("division by a 2-adic zero throws") {
  const auto one = PadicApprox::from_rational(1, 10);
  CHECK_THROWS_AS(one / PadicApprox::zero(10), Error);
}

TEST_CASE("inverse modulo powers of two") {
  for (long odd : {1L, 3L, 5L, 12345L, -7L}) {
    const Integer inv = inverse_mod_power_of_two(odd, 64);
    const Integer prod = inv * odd;
    CHECK(mpz_divisible_2exp_p(Integer(prod - 1).get_mpz_t(), 64) != 0);
  }
}

TEST_CASE("digits print least significant last") {
  CHECK(PadicApprox::from_rational(5, 3).digits().find("101") != std::string::npos);
}
