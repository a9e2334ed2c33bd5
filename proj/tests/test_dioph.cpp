#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "holo/certificates.hpp"
#include "holo/dioph.hpp"
#include "holo/error.hpp"

using namespace holo;
using namespace holo::dioph;

namespace {

Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer power(const Integer& b, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

}  // namespace

TEST_CASE("factored rationals") {
  const auto x = FactoredRational::from_rational(Rational(10, 3));
  CHECK(x.to_string() == "2^1*3^-1*5^1");
  CHECK(x.value() == Rational(10, 3));
  CHECK(height(x) == doctest::Approx(std::log(10.0)));
  CHECK((x * x.inverse()).is_one());
  CHECK(x.pow(3).value() == Rational(1000, 27));
  CHECK(FactoredRational::from_rational(Rational(-4)).sign() == -1);
  CHECK_THROWS_AS(FactoredRational::from_rational(0), Error);
}

TEST_CASE("exact log height picks the dominant side") {
  const auto h = exact_log_height(FactoredRational::from_rational(Rational(3, 16)));
  CHECK(h.size() == 1);
  CHECK(h.at(2) == 4);
}

TEST_CASE("property: Dirichlet rounding meets its inequality") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> entry(-100000, 100000);
  std::uniform_int_distribution<unsigned long> dims(1, 3), qs(1, 8), ns(1, 5);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t t = dims(rng);
    std::vector<Integer> n(t);
    for (auto& x : n) x = entry(rng);
    const unsigned long Q = qs(rng);
    const Integer N = ns(rng);
    const auto d = dirichlet_round(n, Q, N);
    REQUIRE(d.q >= 1);
    REQUIRE(d.q <= Q);
    CHECK(d.r * d.q == factorial(Q) * N);
    for (std::size_t i = 0; i < t; ++i) {
      const Integer err = abs(n[i] - d.r * d.p[i]);
      CHECK(err == d.errors[i]);
      CHECK(power(err, t) * Q <= power(d.r, t));
    }
  }
}

TEST_CASE("Dirichlet worked example") {
  const auto d = dirichlet_round({10, 17}, 3, 2);
  CHECK(d.q == 1);
  CHECK(d.r == 12);
  CHECK(d.p == std::vector<Integer>{1, 1});
}

TEST_CASE("property: coset decomposition reconstructs gamma") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> e(-300, 300);
  const std::vector<FactoredRational> gens = {FactoredRational::from_rational(2),
                                              FactoredRational::from_rational(Rational(3, 5))};
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<Integer> ex = {e(rng), e(rng)};
    const auto c = coset_decompose(ex, gens, 4, 1);
    const auto gamma = gens[0].pow(ex[0]) * gens[1].pow(ex[1]);
    CHECK(c.a0 * c.eta.pow(c.r) == gamma);
    CHECK(c.height_a0 <= c.height_bound + 1e-9);
  }
}

TEST_CASE("constant chain: square root example") {
  ChainInput in;
  in.g = GFunctionConfig::pure_power(1.0, 0.5);
  in.generators = {FactoredRational::from_rational(2)};
  in.epsilon = 0.5;
  in.height_A = 1.0;
  const auto r = effective_constant_chain(in);
  CHECK(r.c8 == doctest::Approx(16.0).epsilon(1e-9));
  CHECK(r.c9 == doctest::Approx(std::log(2.0)));
  CHECK(r.Q == 23);
  CHECK(r.base == 2);
  CHECK(r.r_min == factorial(22) * r.N);
}

TEST_CASE("constant chain: residual characteristic 2 uses base 3") {
  ChainInput in;
  in.place = PlaceLabel::parse("2");
  in.g = GFunctionConfig::pure_power(1.0, 0.5);
  in.generators = {FactoredRational::from_rational(2)};
  in.height_A = 1e30;
  const auto r = effective_constant_chain(in);
  CHECK(r.base == 3);
  CHECK(Rational(r.N) > Rational(2 * 16) * Rational(1e30) / Rational(factorial(22)));
}

TEST_CASE("g-function shapes") {
  const auto g = GFunctionConfig::power_log(1.0, 1);
  CHECK(g(std::exp(6.0)) == doctest::Approx(std::exp(3.0) / 216.0));
  CHECK(g.onset() == doctest::Approx(std::exp(6.0)));
  CHECK_THROWS_AS(PlaceLabel::parse("4"), Error);
  CHECK(PlaceLabel::parse("inf").archimedean);
}

TEST_CASE("root singularities of the binomial scenario") {
  const auto [a, b] = root_singularities(4);
  CHECK(a == doctest::Approx(1.0 / 9));
  CHECK(b == doctest::Approx(1.0));
}

TEST_CASE("pi system tau is H_k - k/(2(k+1))") {
  for (unsigned k = 1; k <= 6; ++k) {
    Rational h = 0;
    for (unsigned j = 1; j <= k; ++j) h += Rational(1, j);
    CHECK(pi_system_tau(k) == h - Rational(k, 2 * (k + 1)));
  }
}

TEST_CASE("sweep CSV has a header and one row per point") {
  CertificateGrid g;
  g.radii = {160.0};
  g.k_min = 3;
  g.k_max = 4;
  g.grid_n = 256;
  const auto c = binomial_certificate(2, 17, g);
  const auto csv = sweep_csv("17", c);
  CHECK(csv.rfind("r,R,k,kappa,feasible,numerator,denominator\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(c.points.size()));
}
