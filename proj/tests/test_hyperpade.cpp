#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "holo/error.hpp"
#include "holo/hyperpade.hpp"

using namespace holo;
using namespace holo::hyperpade;
using series::ExactSeries;

namespace {

Rational rising(const Rational& a, unsigned n) {
  Rational p = 1;
  for (unsigned i = 0; i < n; ++i) p *= a + i;
  return p;
}

Rational factorial(unsigned n) { return rising(1, n); }

}  // namespace

TEST_CASE("binomial coefficients") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(Rational(1, 2), 2) == Rational(-1, 8));
  CHECK(binomial(-1, 3) == -1);
  CHECK(binomial(7, 0) == 1);
}

TEST_CASE("2F1 coefficients are Pochhammer ratios") {
  const HypergeometricParams p{Rational(1, 3), Rational(2, 5), Rational(7, 4)};
  const auto f = hyper_2f1_poly(p, 10);
  for (unsigned n = 0; n < 10; ++n) {
    CHECK(f[n] == rising(p.a, n) * rising(p.b, n) / (rising(p.c, n) * factorial(n)));
  }
}

TEST_CASE("2F1 terminates on a nonpositive integer upper parameter") {
  const auto f = hyper_2f1_poly({-3, Rational(1, 2), Rational(3, 2)}, 8);
  for (unsigned n = 4; n < 8; ++n) CHECK(f[n] == 0);
  CHECK(f[3] != 0);
}

TEST_CASE("2F1 with a lower pole first is a POLE_ERROR") {
  try {
    hyper_2f1_poly({-5, 1, -2}, 8);
    FAIL("expected POLE_ERROR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleError);
  }
}

TEST_CASE("Pade remainder at nu = 1/2, m = n = 1") {
  // Independent oracle: expand both sides from the binomial series directly.
  const Rational nu(1, 2);
  const auto r = pade_identity_check(1, 1, nu, 6);
  CHECK(r.remainder_valuation == 3);
  CHECK(r.leading_coefficient == r.expected_coefficient);
  // (-1)^1 binom(3/2, 3) / binom(2, 1) = -(-1/16)/2 = 1/32.
  CHECK(r.expected_coefficient == Rational(1, 32));
}

TEST_CASE("A_nu integrality scaled by r^(2j)") {
  for (long r : {2L, 3L}) {
    for (unsigned n = 0; n <= 8; ++n) {
      const auto poly = dihedral_coefficient_poly(Rational(1, r), n);
      series::Integer scale = 1;
      for (std::size_t j = 0; j < poly.size(); ++j) {
        CHECK(Rational(poly[j] * scale).get_den() == 1);
        scale *= r * r;
      }
    }
  }
}

TEST_CASE("dihedral generators solve their ODE") {
  const auto pair = dihedral_generators(Rational(1, 3), Rational(2, 7), 16);
  CHECK(dihedral_ode_residual(pair.A, pair.nu, pair.x).is_zero());
  CHECK(dihedral_ode_residual(pair.B, pair.nu, pair.x).is_zero());
  CHECK(pair.A[0] == 1);
}

TEST_CASE("companion values satisfy the ODE numerically") {
  const double nu = 0.3, x = 0.2;
  const std::complex<double> y(0.05, 0.02);
  const double h = 1e-4;
  auto f = [&](std::complex<double> t) { return companion_values(nu, x, t).first; };
  const auto d1 = (f(y + h) - f(y - h)) / (2 * h);
  const auto d2 = (f(y + h) - 2.0 * f(y) + f(y - h)) / (h * h);
  const auto res = (1.0 - 4.0 * y + 2.0 * x * y + x * x * y * y) * d2 + 3.0 * (x * x * y + x - 2.0) * d1 +
                   x * x * (1 - nu * nu) * f(y);
  CHECK(std::abs(res) < 1e-5);
}

TEST_CASE("property: disc bound for p | r and p-integral x") {
  for (long r : {2L, 3L, 4L, 6L}) {
    for (unsigned long p : {2UL, 3UL}) {
      if (r % static_cast<long>(p) != 0) continue;
      for (const Rational& x : {Rational(1), Rational(-2), Rational(5, 7), Rational(7)}) {
        if (x.get_den() % p == 0) continue;
        CAPTURE(r);
        CAPTURE(p);
        CHECK_FALSE(disc_property_violation(Rational(1, r), x, p, 31).has_value());
      }
    }
  }
  CHECK_THROWS_AS(disc_property_violation(Rational(1, 3), Rational(1), 2, 5), Error);
}

TEST_CASE("log family at x = 2 is the arcsine pair") {
  const auto f = log_family(2, 12);
  CHECK(f.pi_form);
  // (1 - 4 z^2)^(-1/2) = sum binom(2n, n) z^(2n).
  CHECK(f.A[0] == 1);
  CHECK(f.A[2] == 2);
  CHECK(f.A[4] == 6);
  CHECK(f.A[1] == 0);
  // -2 A arcsin(2z) starts -4z.
  CHECK(f.B[1] == -4);
}

TEST_CASE("Catalan family: A solves its operator") {
  const auto c = catalan_family(14, 48);
  const auto res = catalan_operator(c.A);
  for (std::size_t n = 0; n + 2 < res.order(); ++n) CHECK(res[n] == 0);
  CHECK(c.precision_bits > 0);
}
