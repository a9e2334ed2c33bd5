#include "holo/capacity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "holo/error.hpp"
#include "holo/parallel.hpp"

namespace holo::capacity {

using confmaps::cd;
using confmaps::Node;

namespace {

constexpr double kPi = std::numbers::pi;
// Parameter cutoff s for the cusp route; beyond it one period is repeated.
constexpr double kCuspWindow = 120.0;
// Winding period of the cusp tail in the parameter s.
constexpr double kCuspPeriod = 12.0 / kPi;
// Singular inner mass of the template at its cusp.
constexpr double kCuspInnerMass = kPi * kPi / 6.0;
// Orbit points are collected above this height in both cusp charts.
constexpr double kOrbitHeight = 0.2;
// Translates summed explicitly in the chart of the cusp 1/2.
constexpr int kTranslates = 256;

constexpr std::array<double, 4> kGaussNodes = {0.1834346424956498, 0.5255324099163290,
                                               0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGaussWeights = {0.3626837833783620, 0.3137066458778873,
                                                 0.2223810344533745, 0.1012285362903763};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonfiniteSample, std::string("non-finite log sample in ") + what);
  }
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double weighted_double_sum(const AnalyticMap& map, const std::vector<Node>& zs,
                           const std::vector<double>& wz, const std::vector<Node>& ws,
                           const std::vector<double>& ww) {
  std::vector<double> rows(zs.size());
  parallel_for(zs.size(), [&](std::size_t i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < ws.size(); ++j) {
      const double v = map.log_abs_difference(zs[i], ws[j]);
      require_finite(v, "Bost-Charles integrand");
      acc += ww[j] * v;
    }
    // Offset-grid bias of the diagonal log singularity.
    rows[i] = wz[i] * (acc - ww[i] * std::log(2.0));
  });
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

double uniform_level(const AnalyticMap& map, std::size_t n) {
  std::vector<Node> zs(n), ws(n);
  parallel_for(n, [&](std::size_t j) {
    const double t = 2.0 * kPi / static_cast<double>(n);
    zs[j] = map.node(std::polar(1.0, t * (static_cast<double>(j) + 0.25)));
    ws[j] = map.node(std::polar(1.0, t * (static_cast<double>(j) + 0.75)));
  });
  const std::vector<double> w(n, 1.0 / static_cast<double>(n));
  return weighted_double_sum(map, zs, w, ws, w);
}

struct Matrix {
  long a, b, c, d;
};

long extended_gcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long x1 = 0, y1 = 0;
  const long g = extended_gcd(b, ((a % b) + b) % b, x1, y1);
  x = y1;
  y = x1 - static_cast<long>(std::floor(static_cast<double>(a) / static_cast<double>(b))) * y1;
  return g;
}

// Moves tau into the standard fundamental domain; returns M with M tau = tau0.
cd reduce_to_fundamental(cd tau, Matrix& m) {
  m = {1, 0, 0, 1};
  for (int it = 0; it < 10000; ++it) {
    const long n = std::lround(tau.real());
    tau -= static_cast<double>(n);
    m = {m.a - n * m.c, m.b - n * m.d, m.c, m.d};
    if (std::norm(tau) >= 1.0 - 1e-14) return tau;
    tau = -1.0 / tau;
    m = {-m.c, -m.d, m.a, m.b};
  }
  throw Error(ErrorCode::NonConvergence, "modular reduction did not terminate");
}

// Points of the level-2 orbit of tau with imaginary part above kOrbitHeight,
// one per translation class.
std::vector<cd> high_orbit_points(cd tau) {
  Matrix m{};
  const cd t0 = reduce_to_fundamental(tau, m);
  const double y0 = t0.imag();
  const double bound = y0 / kOrbitHeight;
  std::vector<cd> out;
  for (long c = 0; static_cast<double>(c * c) * y0 * y0 < bound; ++c) {
    long lo = 1, hi = 1;
    if (c > 0) {
      const double r = std::sqrt(bound - static_cast<double>(c * c) * y0 * y0);
      lo = static_cast<long>(std::floor(-static_cast<double>(c) * t0.real() - r));
      hi = static_cast<long>(std::ceil(-static_cast<double>(c) * t0.real() + r));
    }
    for (long d = lo; d <= hi; ++d) {
      if (std::gcd(c, d) != 1) continue;
      if ((c * m.a + d * m.c) % 2 != 0) continue;
      long x = 0, y = 0;
      const long g = extended_gcd(d, c, x, y);
      const long a = x * g, b = -y * g;
      const cd p = (static_cast<double>(a) * t0 + static_cast<double>(b)) /
                   (static_cast<double>(c) * t0 + static_cast<double>(d));
      if (p.imag() > kOrbitHeight) out.emplace_back(p.real() - std::floor(p.real()), p.imag());
    }
  }
  return out;
}

// log(1/|z|) for z = 3q/(1 - 2q), q = exp(2 pi i tau).
double depth_of(cd tau) {
  const cd q = std::exp(cd(0.0, 2.0 * kPi) * tau);
  return 2.0 * kPi * tau.imag() - std::log(3.0) + std::log(std::abs(1.0 - 2.0 * q));
}

// Sum of log(1/|z|) over the other preimages z in the disc of the template
// value at the boundary point exp(i theta).
double preimage_depth_sum(double theta) {
  const cd w = std::polar(1.0, theta);
  const cd tau_w = std::log(w / (2.0 * w + 3.0)) / cd(0.0, 2.0 * kPi);
  const std::vector<cd> high = high_orbit_points(tau_w);
  constexpr double kSame = 1e-10;
  auto same_class = [](cd a, cd b) {
    const cd d = a - b;
    return std::abs(d.imag()) < kSame && std::abs(d.real() - std::round(d.real())) < kSame;
  };
  double total = 0.0;
  for (cd p : high) total += std::max(0.0, depth_of(p));
  for (cd p : high) {
    for (int k = -kTranslates; k <= kTranslates; ++k) {
      const cd t = p + static_cast<double>(k);
      const cd tau = t / (1.0 + 2.0 * t);
      const double l = depth_of(tau);
      if (l <= 0.0) continue;
      if (tau.imag() > kOrbitHeight &&
          std::any_of(high.begin(), high.end(), [&](cd h) { return same_class(h, tau); })) {
        continue;
      }
      total += l;
    }
    // Remaining translates contribute c/k^2 asymptotically.
    const double c = kPi * p.imag() / 6.0 - kPi * kPi / 36.0;
    if (c > 0.0) {
      total += c / (kTranslates + 1.0 + p.real()) + c / (kTranslates - p.real());
    }
  }
  return total;
}

// Parameter weight of dtheta / 2pi on the half circle theta = 2 atan(s), doubled.
double half_weight(double s) { return 2.0 / (kPi * (1.0 + s * s)); }

// Total weight of the periodic copies s + kP, k >= 1.
double repeated_weight(double s) {
  constexpr int kCopies = 64;
  double r = 0.0;
  for (int k = 1; k <= kCopies; ++k) r += half_weight(s + k * kCuspPeriod);
  const double a = s + (kCopies + 0.5) * kCuspPeriod;
  return r + (0.5 - std::atan(a) / kPi) * 2.0 / kCuspPeriod;
}

// Jensen form: log|m'(0)| + cusp mass + boundary mean of the preimage sum.
double cusp_orbit_level(const AnalyticMap& map, std::size_t n) {
  const std::size_t panels = n / 2;
  const std::size_t tail_panels = std::max<std::size_t>(
      8, static_cast<std::size_t>(std::ceil(static_cast<double>(panels) * kCuspPeriod / kCuspWindow)));
  const std::size_t nodes = 2 * kGaussNodes.size();
  std::vector<double> terms((panels + tail_panels) * nodes);
  parallel_for(panels + tail_panels, [&](std::size_t i) {
    const bool tail = i >= panels;
    const double width = tail ? kCuspPeriod / static_cast<double>(tail_panels)
                              : kCuspWindow / static_cast<double>(panels);
    const double left = tail ? kCuspWindow - kCuspPeriod + width * static_cast<double>(i - panels)
                             : width * static_cast<double>(i);
    for (std::size_t j = 0; j < nodes; ++j) {
      const double x = (j % 2 == 0 ? -1.0 : 1.0) * kGaussNodes[j / 2];
      const double s = left + 0.5 * width * (1.0 + x);
      const double weight = 0.5 * width * kGaussWeights[j / 2] * (tail ? repeated_weight(s) : half_weight(s));
      const double z = preimage_depth_sum(2.0 * std::atan(s));
      require_finite(z, "preimage sum");
      terms[i * nodes + j] = weight * z;
    }
  });
  double total = 0.0;
  for (double t : terms) total += t;
  return std::log(map.conformal_size()) + kCuspInnerMass + total;
}

double level(const AnalyticMap& map, std::size_t n) {
  if (map.boundary_cusp_angle()) return cusp_orbit_level(map, n);
  return uniform_level(map, n);
}

double golden_max(const AnalyticMap& map, double a, double b, double& arg) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  // The boundary cusp itself is outside the domain; it is never a maximum.
  auto f = [&](double t) {
    try {
      return map.eval_log_abs(std::polar(1.0, t));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DomainError) throw;
      return -std::numeric_limits<double>::infinity();
    }
  };
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  arg = f1 > f2 ? x1 : x2;
  return std::max(f1, f2);
}

}  // namespace

double cusp_tail_radius() { return std::exp(-kPi * kPi / 3.0); }

double bost_charles_level(const AnalyticMap& map, std::size_t grid_n) { return level(map, grid_n); }

IntegralResult bost_charles_integral(const AnalyticMap& map, std::size_t grid_n) {
  if (grid_n < 64 || !is_power_of_two(grid_n)) {
    throw Error(ErrorCode::PreconditionViolation, "grid_n must be a power of two >= 64");
  }
  IntegralResult r;
  r.grid_n = grid_n;
  r.cusp_path = map.boundary_cusp_angle().has_value();
  r.coarse = level(map, grid_n / 2);
  r.fine = level(map, grid_n);
  // The cusp route has kinks where preimages cross the circle, so no extrapolation.
  r.value = r.cusp_path ? r.fine : (4.0 * r.fine - r.coarse) / 3.0;
  r.error_estimate = std::abs(r.fine - r.coarse);
  return r;
}

SupResult sup_log_on_circle(const AnalyticMap& map, std::size_t grid_n) {
  if (grid_n < 256) throw Error(ErrorCode::PreconditionViolation, "grid_n must be >= 256");
  const double step = 2.0 * kPi / static_cast<double>(grid_n);
  std::vector<double> vals(grid_n);
  parallel_for(grid_n, [&](std::size_t k) {
    vals[k] = map.eval_log_abs(std::polar(1.0, step * (static_cast<double>(k) + 0.5)));
  });
  std::vector<std::size_t> peaks;
  for (std::size_t k = 0; k < grid_n; ++k) {
    const double prev = vals[(k + grid_n - 1) % grid_n];
    const double next = vals[(k + 1) % grid_n];
    if (vals[k] >= prev && vals[k] >= next) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  if (peaks.size() > 3) peaks.resize(3);
  SupResult best{-std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t k : peaks) {
    const double centre = step * (static_cast<double>(k) + 0.5);
    double arg = centre;
    double v = golden_max(map, centre - step, centre + step, arg);
    if (vals[k] > v) {
      v = vals[k];
      arg = centre;
    }
    if (v > best.value) best = {v, std::remainder(arg, 2.0 * kPi)};
  }
  return best;
}

bool PlaceLedger::consistent(double tol) const {
  if (per_prime_log_radii.empty()) return true;
  double s = 0.0;
  for (const auto& [p, v] : per_prime_log_radii) s += v;
  return std::abs(s - nonarch_log_radius_sum) <= tol * std::max(1.0, std::abs(s));
}

PlaceLedger padic_ledger_for_root(unsigned long r) {
  if (r == 0) throw Error(ErrorCode::PreconditionViolation, "r must be positive");
  PlaceLedger ledger;
  auto add = [&ledger](unsigned long p, int v) {
    const double lp = std::log(static_cast<double>(p));
    ledger.per_prime_log_radii[p] = -(v * lp + lp / static_cast<double>(p - 1));
  };
  unsigned long rest = r;
  for (unsigned long p = 2; p * p <= rest; ++p) {
    int v = 0;
    while (rest % p == 0) {
      rest /= p;
      ++v;
    }
    if (v > 0) add(p, v);
  }
  if (rest > 1) add(rest, 1);
  for (const auto& [p, v] : ledger.per_prime_log_radii) ledger.nonarch_log_radius_sum += v;
  return ledger;
}

}  // namespace holo::capacity
