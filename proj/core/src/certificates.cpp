#include "holo/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "holo/capacity.hpp"
#include "holo/error.hpp"

namespace holo::dioph {

namespace {

using confmaps::AnalyticMap;
using confmaps::cd;
using holobound::Scenario;

constexpr int kRhoSteps = 52;
constexpr int kFeasibilitySteps = 60;

struct Family {
  cd alpha;
  cd beta;
  std::vector<holobound::NonarchPlace> nonarch;
  std::function<Rational(unsigned)> tau;
  std::string name;
};

Family binomial_family(const Rational& a, unsigned long r) {
  const auto [alpha, beta] = root_singularities(a);
  Family f{alpha, beta, {}, [](unsigned) { return Rational(0); }, "root " + std::to_string(r) + " of " + series::to_string(a)};
  for (const auto& [p, log_radius] : capacity::padic_ledger_for_root(r).per_prime_log_radii) {
    f.nonarch.push_back({std::to_string(p), log_radius});
  }
  return f;
}

Family pi_family() { return {cd(-0.5), cd(0.5), {}, pi_system_tau, "pi"}; }

Scenario build(const Family& f, double R, unsigned k, double log_rho_inv, std::size_t grid_n) {
  Scenario s;
  s.name = f.name + ", R = " + std::to_string(R) + ", k = " + std::to_string(k);
  s.m = k + 1;
  s.m_nu.assign(k + 1, 1);
  s.tau = f.tau(k);
  s.arch.push_back({"inf", AnalyticMap::scaled(AnalyticMap::phi(f.alpha, f.beta), R),
                    holobound::NumeratorSource::Quadrature, 0.0, std::nullopt});
  s.nonarch = f.nonarch;
  s.approx.push_back({"inf", log_rho_inv, std::nullopt});
  s.coupling = holobound::Coupling::SingleExponent;
  s.grid_n = grid_n;
  return s;
}

Certificate search(const Family& f, const CertificateGrid& grid) {
  if (grid.radii.empty() || grid.k_min == 0 || grid.k_max < grid.k_min) {
    throw Error(ErrorCode::PreconditionViolation, "empty certificate grid");
  }
  Certificate best;
  bool any_feasible = false, any_threshold = false;
  for (const double R : grid.radii) {
    if (!(R > 0.0)) throw Error(ErrorCode::PreconditionViolation, "radius must be positive");
    const auto map = AnalyticMap::scaled(AnalyticMap::phi(f.alpha, f.beta), R);
    const double log_rho_inv = measured_log_rho_inv(map, std::abs(f.alpha), grid.grid_n);
    const Scenario base = build(f, R, grid.k_min, log_rho_inv, grid.grid_n);
    const holobound::Assembly assembly = holobound::assemble(base);
    for (unsigned k = grid.k_min; k <= grid.k_max; ++k) {
      const Scenario s = build(f, R, k, log_rho_inv, grid.grid_n);
      const auto limit = holobound::evaluate_bound(s, assembly);
      CertificatePoint pt{R, k, std::nullopt, std::nullopt, limit.feasible, limit.numerator, limit.denominator,
                          log_rho_inv};
      if (pt.feasible) {
        any_feasible = true;
        try {
          const auto t = holobound::kappa_threshold(s, assembly, s.m);
          pt.kappa = t.kappa;
          if (std::isfinite(t.kappa_high)) pt.kappa_certified = t.kappa_high;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoThreshold) throw;
        }
      }
      if (pt.kappa_certified) {
        if (!any_threshold || *pt.kappa_certified < best.kappa_eff) {
          best.kappa_eff = *pt.kappa_certified;
          best.kappa_central = *pt.kappa;
          best.R_star = R;
          best.k_star = k;
          best.scenario = s;
        }
        any_threshold = true;
      }
      best.points.push_back(pt);
    }
  }
  if (!any_feasible) throw Error(ErrorCode::InfeasibleEverywhere, "no grid point has a positive denominator");
  if (!any_threshold) throw Error(ErrorCode::NoThreshold, "no grid point brings the bound below k + 1");
  return best;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

CertificateGrid default_binomial_grid(unsigned long r) {
  CertificateGrid g;
  for (double R = 5.0; R <= 1280.0; R *= 2.0) g.radii.push_back(R);
  g.k_min = 1;
  g.k_max = static_cast<unsigned>(r > 1 ? r - 1 : 1);
  return g;
}

CertificateGrid default_pi_grid(unsigned k_max) {
  CertificateGrid g;
  for (double R = 4.0; R <= 4096.0; R *= 2.0) g.radii.push_back(R);
  g.k_min = 1;
  g.k_max = k_max;
  return g;
}

std::pair<double, double> root_singularities(const Rational& a) {
  if (a <= 0 || a == 1) throw Error(ErrorCode::PreconditionViolation, "a must be positive and different from 1");
  const double s = std::sqrt(a.get_d());
  return {1.0 / ((1.0 + s) * (1.0 + s)), 1.0 / ((1.0 - s) * (1.0 - s))};
}

double measured_log_rho_inv(const AnalyticMap& map, double modulus, std::size_t grid_n) {
  const double target = std::log(modulus);
  auto inside = [&](double log_rho) {
    return capacity::sup_log_on_circle(AnalyticMap::scaled(map, std::exp(log_rho)), grid_n).value < target;
  };
  if (inside(0.0)) return 0.0;
  double lo = -1.0, hi = 0.0;
  while (!inside(lo)) {
    hi = lo;
    lo *= 2.0;
    if (lo < -200.0) throw Error(ErrorCode::NonConvergence, "no circle maps inside the modulus");
  }
  for (int i = 0; i < kRhoSteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return -lo;
}

holobound::Scenario binomial_scenario(const Rational& a, unsigned long r, double R, unsigned k,
                                      std::size_t grid_n) {
  const Family f = binomial_family(a, r);
  const auto map = AnalyticMap::scaled(AnalyticMap::phi(f.alpha, f.beta), R);
  return build(f, R, k, measured_log_rho_inv(map, std::abs(f.alpha), grid_n), grid_n);
}

holobound::Scenario pi_scenario(double R, unsigned k, std::size_t grid_n) {
  const Family f = pi_family();
  const auto map = AnalyticMap::scaled(AnalyticMap::phi(f.alpha, f.beta), R);
  return build(f, R, k, measured_log_rho_inv(map, std::abs(f.alpha), grid_n), grid_n);
}

Rational pi_system_tau(unsigned k) {
  std::vector<std::pair<std::size_t, Rational>> columns;
  for (unsigned j = 1; j <= k; ++j) columns.emplace_back(j, Rational(1, j));
  if (columns.empty()) return 0;
  return series::tau(series::DenominatorType::from_columns(k + 1, columns));
}

Certificate binomial_certificate(const Rational& a, unsigned long r, const CertificateGrid& grid) {
  if (r < 3) throw Error(ErrorCode::PreconditionViolation, "r must be at least 3");
  return search(binomial_family(a, r), grid);
}

Certificate pi_measure_search(unsigned k_max, const CertificateGrid& grid) {
  if (k_max < 2) throw Error(ErrorCode::PreconditionViolation, "k_max must be at least 2");
  CertificateGrid g = grid;
  g.k_max = std::min(g.k_max, k_max);
  Certificate c = search(pi_family(), g);
  c.feasibility_radius = pi_feasibility_radius(c.k_star, 1e-3, c.R_star, g.grid_n);
  return c;
}

std::optional<double> pi_feasibility_radius(unsigned k, double R_low, double R_high, std::size_t grid_n) {
  const Family f = pi_family();
  auto feasible = [&](double log_R) {
    const Scenario s = build(f, std::exp(log_R), k, 0.0, grid_n);
    double size = std::log(s.arch.front().map->conformal_size());
    return size - s.tau.get_d() > 0.0;
  };
  double lo = std::log(R_low), hi = std::log(R_high);
  if (feasible(lo) || !feasible(hi)) return std::nullopt;
  for (int i = 0; i < kFeasibilitySteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return std::exp(hi);
}

std::string sweep_csv(const std::string& label, const Certificate& c) {
  std::string out = "r,R,k,kappa,feasible,numerator,denominator\n";
  for (const auto& p : c.points) {
    out += label + "," + format_number(p.R) + "," + std::to_string(p.k) + "," +
           (p.kappa_certified ? format_number(*p.kappa_certified) : std::string("")) + "," +
           (p.feasible ? "1" : "0") + "," + format_number(p.numerator) + "," + format_number(p.denominator) + "\n";
  }
  return out;
}

}  // namespace holo::dioph
