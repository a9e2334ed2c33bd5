#include "holo/holobound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "holo/capacity.hpp"
#include "holo/error.hpp"

namespace holo::holobound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kScanStep = 1.05;
constexpr double kScanTop = 1e12;

void require_number(double v, const std::string& what) {
  if (std::isnan(v)) throw Error(ErrorCode::NanInput, what + " is NaN");
}

std::vector<std::optional<double>> scenario_kappas(const Scenario& s) {
  std::vector<std::optional<double>> k;
  k.reserve(s.approx.size());
  for (const auto& p : s.approx) k.push_back(p.kappa);
  return k;
}

// Returns true when every kappa is set; false when none is; throws otherwise.
bool all_fixed(const std::vector<std::optional<double>>& kappas) {
  const auto set = std::count_if(kappas.begin(), kappas.end(), [](const auto& k) { return k.has_value(); });
  if (set != 0 && static_cast<std::size_t>(set) != kappas.size()) {
    throw Error(ErrorCode::PreconditionViolation, "exponents must be all fixed or all unset");
  }
  return set != 0;
}

double single_exponent_term(double offset, double kappa, double log_rho_inv) {
  return offset * (2.0 / kappa - offset / (kappa * kappa)) * log_rho_inv;
}

struct Sums {
  double alpha = 0.0;     // sum log(1/rho)
  double kappa = 0.0;     // sum kappa
  double weighted = 0.0;  // sum kappa^2 / log(1/rho)
};

Sums exponent_sums(const Scenario& s, const std::vector<std::optional<double>>& kappas) {
  Sums out;
  for (std::size_t u = 0; u < s.approx.size(); ++u) {
    const double a = s.approx[u].log_rho_inv;
    const double k = *kappas[u];
    out.alpha += a;
    out.kappa += k;
    out.weighted += a > 0.0 ? k * k / a : (k != 0.0 ? kInf : 0.0);
  }
  return out;
}

double denominator_for(const Scenario& s, const Assembly& a, const std::vector<std::optional<double>>& kappas) {
  return a.log_size_sum - s.tau.get_d() - s.tau_sharp.get_d() - exponent_term(s, kappas);
}

bool below_target(double numerator, double denominator, std::size_t target_m) {
  return denominator > 0.0 && numerator / denominator < static_cast<double>(target_m);
}

std::size_t unknown_index(const Scenario& s) {
  std::optional<std::size_t> found;
  for (std::size_t u = 0; u < s.approx.size(); ++u) {
    if (s.approx[u].kappa) continue;
    if (found) throw Error(ErrorCode::PreconditionViolation, "more than one unknown exponent");
    found = u;
  }
  if (!found) throw Error(ErrorCode::PreconditionViolation, "no unknown exponent to solve for");
  return *found;
}

double solve_threshold(const Scenario& s, const Assembly& a, std::size_t u, double numerator,
                       std::size_t target_m) {
  auto kappas = scenario_kappas(s);
  auto ok = [&](double k) {
    kappas[u] = k;
    return below_target(numerator, denominator_for(s, a, kappas), target_m);
  };
  if (!ok(kScanTop)) return kInf;
  const double start = std::max(exponent_offset(s), 1e-6);
  std::optional<double> last_fail;
  for (double k = start; k < kScanTop; k *= kScanStep) {
    if (!ok(k)) last_fail = k;
  }
  if (!last_fail) return start;
  double lo = *last_fail, hi = std::min(*last_fail * kScanStep, kScanTop);
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

void validate(const Scenario& s) {
  if (s.m == 0) throw Error(ErrorCode::PreconditionViolation, "m must be positive");
  if (!s.m_nu.empty() && std::accumulate(s.m_nu.begin(), s.m_nu.end(), std::size_t{0}) != s.m) {
    throw Error(ErrorCode::PreconditionViolation, "sum of m_nu must equal m");
  }
  if (s.gamma && (*s.gamma <= 0 || *s.gamma > 1)) {
    throw Error(ErrorCode::PreconditionViolation, "gamma must lie in (0, 1]");
  }
  if (s.coupling == Coupling::SingleExponent && s.approx.size() > 1) {
    throw Error(ErrorCode::PreconditionViolation, "single-exponent coupling takes at most one place");
  }
  for (const auto& p : s.arch) {
    require_number(p.published_numerator, p.label + " numerator");
    if (p.log_size) require_number(*p.log_size, p.label + " log size");
    if (p.source != NumeratorSource::Published && !p.map) {
      throw Error(ErrorCode::PreconditionViolation, p.label + " needs a map");
    }
    if (!p.log_size && !p.map) throw Error(ErrorCode::PreconditionViolation, p.label + " needs a size");
  }
  for (const auto& p : s.nonarch) require_number(p.log_radius, p.label + " log radius");
  for (const auto& p : s.approx) {
    require_number(p.log_rho_inv, p.label + " log(1/rho)");
    if (p.kappa) require_number(*p.kappa, p.label + " kappa");
    if (p.log_rho_inv < 0.0) throw Error(ErrorCode::PreconditionViolation, "log(1/rho) must be >= 0");
    if (p.kappa && *p.kappa <= 0.0) throw Error(ErrorCode::PreconditionViolation, "kappa must be positive");
  }
}

double exponent_offset(const Scenario& s) {
  if (!s.m_nu.empty()) {
    double acc = 0.0;
    for (std::size_t nu = 0; nu < s.m_nu.size(); ++nu) acc += static_cast<double>(nu * s.m_nu[nu]);
    return acc / static_cast<double>(s.m);
  }
  if (s.gamma) return 1.0 - s.gamma->get_d();
  return 0.0;
}

Assembly assemble(const Scenario& s) {
  validate(s);
  Assembly a;
  for (const auto& p : s.arch) {
    PlaceValue v;
    v.label = p.label;
    switch (p.source) {
      case NumeratorSource::Published:
        v.numerator = p.published_numerator;
        break;
      case NumeratorSource::Quadrature: {
        const auto r = capacity::bost_charles_integral(*p.map, s.grid_n);
        v.numerator = r.value;
        v.error = r.error_estimate;
        break;
      }
      case NumeratorSource::SupNorm: {
        const auto r = capacity::sup_log_on_circle(*p.map, s.grid_n);
        v.numerator = r.value;
        v.argmax_theta = r.argmax_theta;
        break;
      }
    }
    v.log_size = p.log_size ? *p.log_size : std::log(p.map->conformal_size());
    a.places.push_back(v);
  }
  for (const auto& p : s.nonarch) a.places.push_back({p.label, p.log_radius, 0.0, p.log_radius, std::nullopt});
  for (const auto& v : a.places) {
    a.numerator += v.numerator;
    a.numerator_error += v.error;
    a.log_size_sum += v.log_size;
  }
  return a;
}

double exponent_term(const Scenario& s, const std::vector<std::optional<double>>& kappas) {
  if (kappas.size() != s.approx.size()) throw Error(ErrorCode::PreconditionViolation, "one exponent per place");
  if (s.approx.empty() || !all_fixed(kappas)) return 0.0;
  const double offset = exponent_offset(s);
  if (s.coupling == Coupling::SingleExponent) {
    return single_exponent_term(offset, *kappas[0], s.approx[0].log_rho_inv);
  }
  const Sums sums = exponent_sums(s, kappas);
  if (std::isinf(sums.weighted)) return sums.alpha;
  if (sums.weighted == 0.0) throw Error(ErrorCode::DivisionByZero, "all exponents vanish");
  const double excess = sums.kappa - offset;
  return sums.alpha - excess * excess / sums.weighted;
}

bool side_condition(const Scenario& s, const std::vector<std::optional<double>>& kappas) {
  if (s.approx.empty() || !all_fixed(kappas)) return true;
  const Sums sums = exponent_sums(s, kappas);
  const double excess = sums.kappa - exponent_offset(s);
  if (excess <= 0.0) return false;
  for (std::size_t u = 0; u < s.approx.size(); ++u) {
    if (*kappas[u] > s.approx[u].log_rho_inv * sums.weighted / excess) return false;
  }
  return true;
}

BoundReport evaluate_bound(const Scenario& s) { return evaluate_bound(s, assemble(s)); }

BoundReport evaluate_bound(const Scenario& s, const Assembly& a) {
  validate(s);
  const auto kappas = scenario_kappas(s);
  BoundReport r;
  r.numerator = a.numerator;
  r.numerator_error = a.numerator_error;
  r.exponent_term = exponent_term(s, kappas);
  r.denominator = denominator_for(s, a, kappas);
  r.feasible = r.denominator > 0.0;
  r.bound = r.feasible ? r.numerator / r.denominator : kInf;
  r.bound_error = r.feasible ? r.numerator_error / r.denominator : kInf;
  r.side_condition_ok = side_condition(s, kappas);
  r.places = a.places;
  return r;
}

ThresholdReport kappa_threshold(const Scenario& s, std::size_t target_m) {
  return kappa_threshold(s, assemble(s), target_m);
}

ThresholdReport kappa_threshold(const Scenario& s, const Assembly& a, std::size_t target_m) {
  validate(s);
  if (target_m == 0) throw Error(ErrorCode::PreconditionViolation, "target_m must be positive");
  ThresholdReport t;
  t.unknown_place = unknown_index(s);
  auto limit = scenario_kappas(s);
  limit[t.unknown_place] = kScanTop;
  const double den = denominator_for(s, a, limit);
  t.limit_bound = den > 0.0 ? a.numerator / den : kInf;
  t.kappa = solve_threshold(s, a, t.unknown_place, a.numerator, target_m);
  if (std::isinf(t.kappa)) {
    throw Error(ErrorCode::NoThreshold, "the kappa -> infinity bound does not go below the target");
  }
  t.kappa_low = solve_threshold(s, a, t.unknown_place, a.numerator - a.numerator_error, target_m);
  t.kappa_high = solve_threshold(s, a, t.unknown_place, a.numerator + a.numerator_error, target_m);
  return t;
}

OptimalQ optimal_q(const Scenario& s, double epsilon) {
  validate(s);
  const auto kappas = scenario_kappas(s);
  if (!all_fixed(kappas)) throw Error(ErrorCode::PreconditionViolation, "optimal_q needs fixed exponents");
  double lin = 0.0, quad = 0.0;
  for (std::size_t u = 0; u < s.approx.size(); ++u) {
    const double a = s.approx[u].log_rho_inv;
    if (a <= 0.0) continue;
    const double k = *kappas[u] - epsilon;
    lin += k;
    quad += k * k / a;
  }
  if (quad == 0.0) throw Error(ErrorCode::DivisionByZero, "every place has rho = 1");
  OptimalQ out;
  const double m = static_cast<double>(s.m);
  out.q = (lin - exponent_offset(s)) * m / quad;
  out.chi_below_m = true;
  for (std::size_t u = 0; u < s.approx.size(); ++u) {
    const double a = s.approx[u].log_rho_inv;
    const double chi = a > 0.0 ? (*kappas[u] - epsilon) * out.q / a : 0.0;
    out.chi.push_back(chi);
    out.chi_below_m = out.chi_below_m && chi < m;
  }
  return out;
}

}  // namespace holo::holobound
