#include <cmath>
#include <limits>
#include <vector>
#include <numbers>

#include "holo/error.hpp"
#include "holo/hauptmodul.hpp"

namespace holo::hauptmodul {

using cd = std::complex<double>;
using series::ExactSeries;
using series::Rational;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kProductRadius = 0.9;

// 24 sum_n log(1 + sign q^n), summed until the tail is negligible.
cd log_product(cd q, double sign) {
  cd acc = 0.0;
  cd qn = q;
  const double r = std::abs(q);
  for (int n = 1; n < 100000; ++n) {
    acc += std::log(1.0 + sign * qn);
    const double tail = std::abs(qn) / (1.0 - r);
    if (tail < 1e-17 * std::max(1.0, std::abs(acc))) break;
    qn *= q;
  }
  return 24.0 * acc;
}

// log Delta(tau) = 2 pi i tau + 24 sum log(1 - e^{2 pi i n tau}), after
// reducing tau into the standard fundamental domain.
cd log_delta(cd tau) {
  cd correction = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    tau -= std::round(tau.real());
    if (std::norm(tau) >= 1.0 - 1e-15) break;
    correction -= 12.0 * std::log(tau);
    tau = -1.0 / tau;
  }
  const cd q = std::exp(cd(0.0, 2.0 * kPi) * tau);
  return correction + cd(0.0, 2.0 * kPi) * tau + log_product(q, -1.0);
}

}  // namespace

ExactSeries x_of_q_series(std::size_t order) {
  if (order == 0) return ExactSeries(0);
  std::vector<Rational> prod(order, Rational(0));
  prod[0] = 1;
  for (std::size_t n = 1; n < order; ++n) {
    // multiply by (1 + q^n)^24 one factor at a time
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t i = order; i-- > n;) prod[i] += prod[i - n];
    }
  }
  std::vector<Rational> out(order, Rational(0));
  for (std::size_t i = 1; i < order; ++i) out[i] = prod[i - 1];
  return ExactSeries(std::move(out));
}

ExactSeries q_of_x_series(std::size_t order) { return series::reversion(x_of_q_series(order)); }

cd log_x_of_q(cd q) {
  const double r = std::abs(q);
  if (!(r < 1.0)) throw Error(ErrorCode::DomainError, "Hauptmodul argument on or outside |q| = 1");
  if (r == 0.0) return cd(-std::numeric_limits<double>::infinity(), 0.0);
  if (r <= kProductRadius) return std::log(q) + log_product(q, 1.0);
  const cd tau = std::log(q) / cd(0.0, 2.0 * kPi);
  return log_delta(2.0 * tau) - log_delta(tau);
}

cd x_of_q(cd q) {
  if (q == cd(0.0, 0.0)) return 0.0;
  return std::exp(log_x_of_q(q));
}

cd q_of_x(cd a) {
  // Damped Newton from q = a, kept inside |q| < e^{-pi} where x is univalent.
  const double limit = std::exp(-kPi);
  auto deriv = [](cd q, cd x) {
    // x'(q)/x(q) = 1/q + 24 sum n q^{n-1}/(1 + q^n)
    cd lp = 0.0, qn = q;
    for (int n = 1; n < 200 && std::abs(qn) > 1e-18; ++n) {
      lp += static_cast<double>(n) * qn / (q * (1.0 + qn));
      qn *= q;
    }
    return x * (1.0 / q + 24.0 * lp);
  };
  cd q = a;
  if (std::abs(q) >= limit) q *= 0.5 * limit / std::abs(q);
  cd x = x_of_q(q);
  for (int it = 0; it < 200; ++it) {
    const double res = std::abs(x - a);
    if (res <= 1e-15 * std::abs(a)) return q;
    cd step = (x - a) / deriv(q, x);
    bool improved = false;
    for (int half = 0; half < 30 && !improved; ++half, step *= 0.5) {
      const cd cand = q - step;
      if (std::abs(cand) >= limit || cand == cd(0.0, 0.0)) continue;
      const cd xc = x_of_q(cand);
      if (std::abs(xc - a) < res) {
        q = cand;
        x = xc;
        improved = true;
      }
    }
    if (!improved) break;
  }
  if (std::abs(x - a) > 1e-10 * std::abs(a)) {
    throw Error(ErrorCode::NonConvergence, "q_of_x: Newton iteration did not converge");
  }
  return q;
}

}  // namespace holo::hauptmodul
