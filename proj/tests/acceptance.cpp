// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "holo/capacity.hpp"
#include "holo/certificates.hpp"
#include "holo/confmaps.hpp"
#include "holo/dioph.hpp"
#include "holo/error.hpp"
#include "holo/holobound.hpp"
#include "holo/padiczeta.hpp"
#include "holo_cli/scenario_io.hpp"
#include "holo_cli/verify_suite.hpp"

namespace {

using namespace holo;
using confmaps::AnalyticMap;
using confmaps::cd;
using series::Integer;
using series::Rational;

const std::filesystem::path kFixtures = HOLO_FIXTURE_DIR;

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    passed = passed && ok;
    notes.push_back((ok ? "ok: " : "FAILED: ") + what);
  }
};

bool near(double v, double target, double tol) { return std::abs(v - target) <= tol; }

holobound::ThresholdReport threshold_of(const std::string& fixture, std::size_t target_m) {
  const auto s = cli::to_scenario(cli::load_scenario(kFixtures / fixture));
  return holobound::kappa_threshold(s, target_m);
}

Outcome identity_suite() {
  Outcome o;
  for (const auto& c : cli::run_verify_suite()) {
    if (c.name.find("single column") != std::string::npos || c.name.find("E") == 0) continue;
    if (c.name.find("q(x)") != std::string::npos) continue;
    o.check(c.passed, c.name + " (" + c.detail + ")");
  }
  return o;
}

Outcome map_oracles() {
  Outcome o;
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    cd a(u(rng), u(rng)), b(3 * u(rng), 3 * u(rng));
    if (std::abs(a) >= std::abs(b)) std::swap(a, b);
    const auto s = AnalyticMap::phi(a, b).series_at_zero(10);
    const auto it = confmaps::phi_by_iteration(a, b, 60, 10);
    for (std::size_t n = 0; n < 10; ++n) worst = std::max(worst, std::abs(s[n] - it[n]));
  }
  o.check(worst < 1e-9, fmt::format("phi series vs iteration, max deviation {:.3g}", worst));
  const auto psi = AnalyticMap::psi({-0.5, 0.0}, {0.5, 0.0});
  double psi_worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const cd z(-1.0 + 0.2 * i, -1.0 + 0.2 * j);
      psi_worst = std::max(psi_worst, std::abs(psi.eval(z) - std::sin(2.0 * z) / 2.0));
    }
  }
  o.check(psi_worst < 1e-12, fmt::format("psi(-1/2, 1/2) vs sin(2z)/2 on 100 points, {:.3g}", psi_worst));
  return o;
}

Outcome quadrature() {
  Outcome o;
  const std::size_t n = 4096;
  const auto id = capacity::bost_charles_integral(AnalyticMap::identity(), n);
  o.check(std::abs(id.value) < 1e-6, fmt::format("identity {:.3g}", id.value));
  const auto circle = capacity::bost_charles_integral(AnalyticMap::mobius_circle_x(), n);
  o.check(near(circle.value, 2.13322, 5e-4), fmt::format("circle {:.6f}, published 2.13322 +- 5e-4", circle.value));
  const auto lune = capacity::bost_charles_integral(AnalyticMap::lune_x(), n);
  o.check(near(lune.value, 3.92881, 1e-3), fmt::format("lune {:.6f}, published 3.92881 +- 1e-3", lune.value));
  return o;
}

Outcome bound_reproductions() {
  Outcome o;
  const auto circle = cli::to_scenario(cli::load_scenario(kFixtures / "zeta25_circle.json"));
  const auto full = holobound::evaluate_bound(circle);
  o.check(near(full.bound, 4.43206, 1e-3), fmt::format("circle bound {:.6f}", full.bound));
  const auto brute = holobound::evaluate_bound(cli::to_scenario(cli::load_scenario(kFixtures / "zeta25_brute.json")));
  const bool located = !brute.places.empty() && brute.places[0].argmax_theta.has_value();
  o.check(near(brute.bound, 5.52667, 1e-3) && located,
          fmt::format("sup-norm bound {:.6f}, arg max {:.6f}", brute.bound,
                      located ? *brute.places[0].argmax_theta : std::nan("")));
  const auto k_circle = threshold_of("zeta25_circle.json", 6);
  o.check(near(k_circle.kappa, 22.0724, 0.05), fmt::format("circle threshold {:.6f}", k_circle.kappa));
  const auto k_lune = threshold_of("zeta25_lune.json", 6);
  o.check(near(k_lune.kappa, 19.7439, 0.05), fmt::format("lune threshold {:.6f}", k_lune.kappa));
  const auto l2 = threshold_of("l2chi3.json", 14);
  o.check(near(l2.limit_bound, 13.9938, 3e-3), fmt::format("L(2, chi_-3) limit {:.6f}", l2.limit_bound));
  o.check(l2.kappa >= 22000 && l2.kappa <= 27000, fmt::format("L(2, chi_-3) threshold {:.1f}", l2.kappa));
  return o;
}

Outcome modular_suite() {
  Outcome o;
  const auto q = padiczeta::q_of_x(5);
  o.check(q[1] == 1 && q[2] == -24 && q[3] == 852 && q[4] == -35744, "q(x) = x - 24x^2 + 852x^3 - 35744x^4");
  try {
    padiczeta::h_series_and_types(1, 51);
    o.check(true, "E*_2 integrality to n = 50");
  } catch (const Error& e) {
    o.check(false, std::string("E*_2: ") + e.what());
  }
  try {
    const auto t = padiczeta::h_series_and_types(2, 41);
    o.check(t.single_column.ok, t.single_column.ok ? "E'_-4 type [1..5n] to n = 40"
                                                   : fmt::format("E'_-4 type [1..5n] breaks at n = {}",
                                                                 t.single_column.first_failure.value_or(0)));
    o.check(t.unit_columns.ok, "E'_-4 type [1..n]^5 to n = 40");
  } catch (const Error& e) {
    o.check(false, std::string("E'_-4: ") + e.what());
  }
  const auto a = padiczeta::zeta2_route_a(2, 16), b = padiczeta::zeta2_route_b(2, 16);
  o.check(padic::agreement(a.value, b.value) >= 16, "zeta_2(5) routes agree mod 2^16");
  const long bits = padiczeta::scan_precision(100);
  const auto found = padiczeta::zeta5_inequality_scan(100);
  const auto doubled = padiczeta::zeta5_inequality_scan(100, padiczeta::zeta2(2, 2 * bits).value);
  bool reverified = found.size() == doubled.size();
  for (std::size_t i = 0; reverified && i < found.size(); ++i) {
    reverified = found[i].p == doubled[i].p && found[i].q == doubled[i].q;
  }
  o.check(reverified, fmt::format("zeta5 scan at height 100: {} exceptions, re-verified at 2^{}", found.size(),
                                  2 * bits));
  return o;
}

Outcome diophantine_suite() {
  Outcome o;
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<long> entry(-1000000, 1000000);
  std::uniform_int_distribution<unsigned long> dims(1, 3), qs(1, 7), ns(1, 9);
  std::size_t violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t t = dims(rng);
    std::vector<Integer> n(t);
    for (auto& x : n) x = entry(rng);
    const unsigned long Q = qs(rng);
    const auto d = dioph::dirichlet_round(n, Q, Integer(ns(rng)));
    for (std::size_t j = 0; j < t; ++j) {
      Integer lhs, rhs;
      const Integer err = abs(n[j] - d.r * d.p[j]);
      mpz_pow_ui(lhs.get_mpz_t(), err.get_mpz_t(), t);
      mpz_pow_ui(rhs.get_mpz_t(), d.r.get_mpz_t(), t);
      if (lhs * Q > rhs || d.q > Q) ++violations;
    }
  }
  o.check(violations == 0, fmt::format("Dirichlet rounding, 10^4 instances, {} violations", violations));

  const std::vector<dioph::FactoredRational> gens = {dioph::FactoredRational::from_rational(2),
                                                     dioph::FactoredRational::from_rational(Rational(7, 3)),
                                                     dioph::FactoredRational::from_rational(Rational(-5))};
  std::uniform_int_distribution<long> e(-500, 500);
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::vector<Integer> ex = {e(rng), e(rng), e(rng)};
    const auto c = dioph::coset_decompose(ex, gens, 5, 1);
    const auto gamma = gens[0].pow(ex[0]) * gens[1].pow(ex[1]) * gens[2].pow(ex[2]);
    if (!(c.a0 * c.eta.pow(c.r) == gamma)) ++mismatches;
  }
  o.check(mismatches == 0, fmt::format("coset reconstruction, 10^3 instances, {} mismatches", mismatches));

  dioph::ChainInput in;
  in.g = dioph::GFunctionConfig::pure_power(1.0, 0.5);
  in.generators = {dioph::FactoredRational::from_rational(2)};
  in.epsilon = 0.5;
  in.height_A = 1.0;
  const auto chain = dioph::effective_constant_chain(in);
  o.check(near(chain.c8, 16.0, 1e-9) && chain.Q == 23, fmt::format("chain c8 = {:.6g}, Q = {}", chain.c8, chain.Q));
  return o;
}

Outcome certificate_searches() {
  Outcome o;
  const Rational two = 2;
  double shape_min = INFINITY, shape_max = 0.0;
  for (unsigned long r : {17UL, 25UL, 36UL, 49UL}) {
    const auto c = dioph::binomial_certificate(two, r, dioph::default_binomial_grid(r));
    const double shape = c.kappa_eff / std::sqrt(r * std::pow(std::log(static_cast<double>(r)), 3));
    shape_min = std::min(shape_min, shape);
    shape_max = std::max(shape_max, shape);
    o.check(c.kappa_eff < static_cast<double>(r),
            fmt::format("r = {}: certified kappa {:.6g} at R = {}, k = {}", r, c.kappa_eff, c.R_star, c.k_star));
    auto s = c.scenario;
    s.approx.back().kappa = c.kappa_central * (1 + 1e-9);
    const auto again = holobound::evaluate_bound(s);
    o.check(again.bound < static_cast<double>(s.m),
            fmt::format("r = {}: re-evaluated bound {:.9g} < m = {}", r, again.bound, s.m));
  }
  o.check(shape_max / shape_min < 4.0,
          fmt::format("kappa / sqrt(r log^3 r) in [{:.3g}, {:.3g}]", shape_min, shape_max));
  const auto pi = dioph::pi_measure_search(40, dioph::default_pi_grid(40));
  const double rel = std::abs(pi.kappa_eff - 15.086) / 15.086;
  o.check(rel <= 0.1, fmt::format("pi: certified kappa {:.6g} at R = {}, k = {}; published 15.086, {}",
                                  pi.kappa_eff, pi.R_star, pi.k_star,
                                  rel <= 0.1 ? "within 10%" : fmt::format("discrepancy {:.0f}%", 100 * rel)));
  return o;
}

Outcome excluded_scope() {
  Outcome o;
  dioph::ChainInput in;
  in.g = dioph::GFunctionConfig::pure_power(2.0, 0.5);
  in.generators = {dioph::FactoredRational::from_rational(2), dioph::FactoredRational::from_rational(3)};
  in.epsilon = 0.5;
  in.height_A = 10.0;
  in.c10 = 2.0;
  in.c11 = 1e6;
  const auto chain = dioph::effective_constant_chain(in);
  // c8 = (2/epsilon / 2)^2 = 4, Q = ceil((2 c8 log 6)^2) = 206.
  o.check(near(chain.c8, 4.0, 1e-9) && chain.Q == 206 && chain.C_final == 1e6 * 11.0,
          fmt::format("general number fields excluded; chain over Q with two generators: c8 = {:.6g}, Q = {}, "
                      "C = {:.6g}",
                      chain.c8, chain.Q, chain.C_final));
  return o;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"exact identity suite", identity_suite, 60},
      {"map oracle agreement", map_oracles, 10},
      {"Bost-Charles quadrature", quadrature, 120},
      {"holonomy-bound reproductions", bound_reproductions, 120},
      {"modular and 2-adic suite", modular_suite, 300},
      {"Diophantine suite", diophantine_suite, 30},
      {"certificate searches", certificate_searches, 600},
      {"excluded scope", excluded_scope, 10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.check(false, std::string("threw ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(secs < criteria[i].budget_seconds, fmt::format("runtime {:.1f} s within {:.0f} s", secs,
                                                           criteria[i].budget_seconds));
    std::printf("%s criterion %zu (%s) [%.1f s]\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(),
                secs);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    failures += o.passed ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
