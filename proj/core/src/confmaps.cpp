#include "holo/confmaps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "holo/error.hpp"
#include "holo/hauptmodul.hpp"

namespace holo::confmaps {

using series::ExactSeries;
using series::Rational;

struct AnalyticMap::Impl {
  MapKind kind = MapKind::CustomSeries;
  // psi / phi
  cd alpha, beta;
  cd c;        // sqrt(alpha beta) for psi
  cd u;        // branch for phi
  cd tanh_u;
  cd phi_scale;  // -alpha / sinh^2 u
  cd slope;      // -u tanh(u) / alpha, so that s^2 = u^2 + slope z
  // scaled / rotated
  double R = 1.0;
  double theta = 0.0;
  std::shared_ptr<const Impl> inner;
  std::vector<cd> coefficients;
};

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// log|sum_k exp(L_k)| for complex logarithms L_k.
double log_abs_sum_exp(const cd* logs, std::size_t n) {
  double m = kNegInf;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, logs[k].real());
  if (m == kNegInf) return kNegInf;
  cd acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (logs[k].real() == kNegInf) continue;
    acc += std::exp(logs[k] - m);
  }
  return m + std::log(std::abs(acc));
}

cd safe_log(cd v) {
  if (v == cd(0.0, 0.0)) return cd(kNegInf, 0.0);
  return std::log(v);
}

// s = sqrt(u^2 + slope z) with the sign making Re(s conj(ref)) >= 0.
cd phi_root(const AnalyticMap::Impl& m, cd z, cd ref) {
  cd s = std::sqrt(m.u * m.u + m.slope * z);
  if ((s * std::conj(ref)).real() < 0.0) s = -s;
  return s;
}

double phi_log_abs_difference(const AnalyticMap::Impl& m, cd z, cd sz, cd w, cd sw) {
  if ((sz * std::conj(sw)).real() < 0.0) sw = -sw;
  const cd sum = sz + sw;
  const cd diff = std::abs(sum) > 0.0 ? m.slope * (z - w) / sum : sz - sw;
  return std::log(std::abs(m.phi_scale)) + log_abs_sinh(sum) + log_abs_sinh(diff);
}

double psi_log_abs(const AnalyticMap::Impl& m, cd Z) {
  const cd A = (m.alpha + m.beta) / 2.0;
  const cd logs[3] = {safe_log(A), safe_log((m.c - A) / 2.0) + Z, safe_log(-(m.c + A) / 2.0) - Z};
  return log_abs_sum_exp(logs, 3);
}

double psi_log_abs_difference(const AnalyticMap::Impl& m, cd Z, cd W) {
  const cd A = (m.alpha + m.beta) / 2.0;
  const cd S = (Z + W) / 2.0;
  const cd D = (Z - W) / 2.0;
  const cd logs[2] = {safe_log((m.c - A) / 2.0) + S, safe_log((m.c + A) / 2.0) - S};
  return std::log(2.0) + log_abs_sinh(D) + log_abs_sum_exp(logs, 2);
}

cd innermost_point(const AnalyticMap::Impl* m, cd z) {
  while (m->kind == MapKind::Scaled || m->kind == MapKind::Rotated) {
    z = m->kind == MapKind::Scaled ? z * m->R : z * std::polar(1.0, m->theta);
    m = m->inner.get();
  }
  return z;
}

const AnalyticMap::Impl* innermost(const AnalyticMap::Impl* m) {
  while (m->kind == MapKind::Scaled || m->kind == MapKind::Rotated) m = m->inner.get();
  return m;
}

cd eval_base(const AnalyticMap::Impl& m, cd z) {
  switch (m.kind) {
    case MapKind::Psi: {
      const cd A = (m.alpha + m.beta) / 2.0;
      const cd Z = z / m.c;
      return A * (1.0 - std::cosh(Z)) + m.c * std::sinh(Z);
    }
    case MapKind::Phi: {
      const cd s = phi_root(m, z, m.u);
      const cd sum = s + m.u;
      const cd diff = m.slope * z / sum;
      return m.phi_scale * std::sinh(sum) * std::sinh(diff);
    }
    case MapKind::MobiusCircleX:
      return hauptmodul::x_of_q(z / (2.0 * z + 3.0));
    case MapKind::LuneX:
      return hauptmodul::x_of_q(lune_inner(z));
    case MapKind::CustomSeries: {
      cd v = 0.0;
      for (std::size_t k = m.coefficients.size(); k-- > 0;) v = v * z + m.coefficients[k];
      return v;
    }
    default:
      break;
  }
  throw Error(ErrorCode::PreconditionViolation, "eval_base on a wrapper map");
}

std::vector<cd> exact_to_complex(const ExactSeries& s) {
  std::vector<cd> out(s.order());
  for (std::size_t i = 0; i < s.order(); ++i) out[i] = s[i].get_d();
  return out;
}

ExactSeries mobius_inner_series(std::size_t order) {
  std::vector<Rational> den(order);
  if (order > 0) den[0] = 3;
  if (order > 1) den[1] = 2;
  return ExactSeries::variable(order) * series::reciprocal(ExactSeries(std::move(den)));
}

ExactSeries template_series(MapKind kind, std::size_t order) {
  const ExactSeries inner =
      kind == MapKind::LuneX ? lune_inner_series(order) : mobius_inner_series(order);
  return series::compose(hauptmodul::x_of_q_series(order), inner);
}

std::vector<cd> cauchy_coefficients(const AnalyticMap::Impl& m, std::size_t order, double radius) {
  const std::size_t n = std::max<std::size_t>(256, 8 * order);
  std::vector<cd> samples(n);
  for (std::size_t k = 0; k < n; ++k) {
    samples[k] = eval_base(m, std::polar(radius, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n)));
  }
  std::vector<cd> out(order);
  for (std::size_t j = 0; j < order; ++j) {
    cd acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += samples[k] * std::polar(1.0, -2.0 * kPi * static_cast<double>((j * k) % n) / static_cast<double>(n));
    }
    out[j] = acc / static_cast<double>(n) / std::pow(radius, static_cast<double>(j));
  }
  out[0] = 0.0;
  return out;
}

std::vector<cd> series_of(const AnalyticMap::Impl& m, std::size_t order) {
  switch (m.kind) {
    case MapKind::Psi: {
      // Taylor coefficients c^{1-n}/n! (n odd) and -A c^{-n}/n! (n even >= 2).
      std::vector<cd> out(order);
      const cd A = (m.alpha + m.beta) / 2.0;
      cd cpow = m.c;  // c^{1-n}
      double fact = 1.0;
      for (std::size_t n = 1; n < order; ++n) {
        fact *= static_cast<double>(n);
        cpow /= m.c;
        out[n] = (n % 2 ? cpow : -A * cpow / m.c) / fact;
      }
      return out;
    }
    case MapKind::Phi:
      return cauchy_coefficients(m, order, std::abs(m.alpha));
    case MapKind::MobiusCircleX:
    case MapKind::LuneX:
      return exact_to_complex(template_series(m.kind, order));
    case MapKind::Scaled: {
      auto out = series_of(*m.inner, order);
      double p = 1.0;
      for (auto& c : out) {
        c *= p;
        p *= m.R;
      }
      return out;
    }
    case MapKind::Rotated: {
      auto out = series_of(*m.inner, order);
      for (std::size_t n = 0; n < order; ++n) out[n] *= std::polar(1.0, m.theta * static_cast<double>(n));
      return out;
    }
    case MapKind::CustomSeries: {
      std::vector<cd> out(order);
      for (std::size_t n = 0; n < std::min(order, m.coefficients.size()); ++n) out[n] = m.coefficients[n];
      return out;
    }
  }
  return {};
}

}  // namespace

double log_abs_sinh(cd x) {
  const double re = x.real();
  if (std::abs(re) <= 20.0) return std::log(std::abs(std::sinh(x)));
  // |sinh x| = e^{|Re x|}/2 |1 - e^{-2 sign(Re x) x}|
  const cd y = re > 0 ? x : -x;
  return y.real() - std::log(2.0) + std::log(std::abs(1.0 - std::exp(-2.0 * y)));
}

std::string kind_name(MapKind kind) {
  switch (kind) {
    case MapKind::Psi: return "psi";
    case MapKind::Phi: return "phi";
    case MapKind::MobiusCircleX: return "mobius_circle_x";
    case MapKind::LuneX: return "lune_x";
    case MapKind::Scaled: return "scaled";
    case MapKind::Rotated: return "rotated";
    case MapKind::CustomSeries: return "custom_series";
  }
  return "unknown";
}

AnalyticMap AnalyticMap::psi(cd alpha, cd beta) {
  if (alpha == beta) throw Error(ErrorCode::PreconditionViolation, "psi needs alpha != beta");
  auto m = std::make_shared<Impl>();
  m->kind = MapKind::Psi;
  m->alpha = alpha;
  m->beta = beta;
  m->c = std::sqrt(alpha * beta);
  if (m->c == cd(0.0, 0.0)) throw Error(ErrorCode::PreconditionViolation, "psi needs alpha beta != 0");
  return AnalyticMap(m);
}

AnalyticMap AnalyticMap::phi(cd alpha, cd beta) {
  if (alpha == cd(0.0, 0.0) || beta == cd(0.0, 0.0)) {
    throw Error(ErrorCode::PreconditionViolation, "phi needs nonzero alpha and beta");
  }
  return phi_with_branch(alpha, beta, std::atanh(std::sqrt(alpha / beta)));
}

AnalyticMap AnalyticMap::phi_with_branch(cd alpha, cd beta, cd u) {
  if (alpha == cd(0.0, 0.0) || u == cd(0.0, 0.0)) {
    throw Error(ErrorCode::PreconditionViolation, "phi needs nonzero alpha and u");
  }
  auto m = std::make_shared<Impl>();
  m->kind = MapKind::Phi;
  m->alpha = alpha;
  m->beta = beta;
  m->u = u;
  m->tanh_u = std::tanh(u);
  const cd sh = std::sinh(u);
  m->phi_scale = -alpha / (sh * sh);
  m->slope = -u * m->tanh_u / alpha;
  return AnalyticMap(m);
}

AnalyticMap AnalyticMap::mobius_circle_x() {
  auto m = std::make_shared<Impl>();
  m->kind = MapKind::MobiusCircleX;
  return AnalyticMap(m);
}

AnalyticMap AnalyticMap::lune_x() {
  auto m = std::make_shared<Impl>();
  m->kind = MapKind::LuneX;
  return AnalyticMap(m);
}

AnalyticMap AnalyticMap::scaled(const AnalyticMap& inner, double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw Error(ErrorCode::PreconditionViolation, "scale must be positive");
  auto m = std::make_shared<Impl>();
  m->kind = MapKind::Scaled;
  m->R = R;
  m->inner = inner.impl_;
  return AnalyticMap(m);
}

AnalyticMap AnalyticMap::rotated(const AnalyticMap& inner, double theta) {
  auto m = std::make_shared<Impl>();
  m->kind = MapKind::Rotated;
  m->theta = theta;
  m->inner = inner.impl_;
  return AnalyticMap(m);
}

AnalyticMap AnalyticMap::custom_series(std::vector<cd> coefficients) {
  if (!coefficients.empty() && coefficients[0] != cd(0.0, 0.0)) {
    throw Error(ErrorCode::PreconditionViolation, "custom series must fix 0");
  }
  auto m = std::make_shared<Impl>();
  m->kind = MapKind::CustomSeries;
  m->coefficients = std::move(coefficients);
  return AnalyticMap(m);
}

AnalyticMap AnalyticMap::identity() { return custom_series({0.0, 1.0}); }

MapKind AnalyticMap::kind() const { return impl_->kind; }

std::string AnalyticMap::describe() const {
  const Impl& m = *impl_;
  auto num = [](cd v) {
    return v.imag() == 0.0 ? std::to_string(v.real())
                           : "(" + std::to_string(v.real()) + "," + std::to_string(v.imag()) + ")";
  };
  switch (m.kind) {
    case MapKind::Psi: return "psi[" + num(m.alpha) + "," + num(m.beta) + "]";
    case MapKind::Phi: return "phi[" + num(m.alpha) + "," + num(m.beta) + "]";
    case MapKind::Scaled: return "scaled[" + AnalyticMap(m.inner).describe() + "," + std::to_string(m.R) + "]";
    case MapKind::Rotated: return "rotated[" + AnalyticMap(m.inner).describe() + "," + std::to_string(m.theta) + "]";
    default: return kind_name(m.kind);
  }
}

cd AnalyticMap::eval(cd z) const {
  const cd p = innermost_point(impl_.get(), z);
  return eval_base(*innermost(impl_.get()), p);
}

double AnalyticMap::eval_log_abs(cd z) const {
  const Impl& m = *innermost(impl_.get());
  const cd p = innermost_point(impl_.get(), z);
  switch (m.kind) {
    case MapKind::Psi:
      return psi_log_abs(m, p / m.c);
    case MapKind::Phi: {
      if (p == cd(0.0, 0.0)) return kNegInf;
      const cd s = phi_root(m, p, m.u);
      return phi_log_abs_difference(m, p, s, 0.0, m.u);
    }
    default:
      return std::log(std::abs(eval_base(m, p)));
  }
}

Node AnalyticMap::node(cd z) const {
  const Impl& m = *innermost(impl_.get());
  Node n;
  n.point = innermost_point(impl_.get(), z);
  switch (m.kind) {
    case MapKind::Psi:
      n.aux = n.point / m.c;
      if (std::abs(n.aux.real()) < 700.0) n.value = eval_base(m, n.point);
      else n.value = cd(std::numeric_limits<double>::infinity(), 0.0);
      break;
    case MapKind::Phi:
      n.aux = phi_root(m, n.point, m.u);
      if (std::abs(n.aux.real()) < 350.0) n.value = eval_base(m, n.point);
      else n.value = cd(std::numeric_limits<double>::infinity(), 0.0);
      break;
    default:
      n.value = eval_base(m, n.point);
      break;
  }
  return n;
}

double AnalyticMap::log_abs_difference(const Node& a, const Node& b) const {
  const Impl& m = *innermost(impl_.get());
  switch (m.kind) {
    case MapKind::Psi:
      return psi_log_abs_difference(m, a.aux, b.aux);
    case MapKind::Phi:
      return phi_log_abs_difference(m, a.point, a.aux, b.point, b.aux);
    default:
      return std::log(std::abs(a.value - b.value));
  }
}

std::vector<cd> AnalyticMap::series_at_zero(std::size_t order) const {
  if (order < 2) throw Error(ErrorCode::PreconditionViolation, "series order must be >= 2");
  return series_of(*impl_, order);
}

std::optional<ExactSeries> AnalyticMap::exact_series_at_zero(std::size_t order) const {
  const MapKind kind = impl_->kind;
  if (kind == MapKind::LuneX || kind == MapKind::MobiusCircleX) return template_series(kind, order);
  return std::nullopt;
}

double AnalyticMap::conformal_size() const {
  const Impl& m = *impl_;
  switch (m.kind) {
    case MapKind::Psi:
    case MapKind::Phi:
      return 1.0;
    case MapKind::MobiusCircleX:
      return 1.0 / 3.0;
    case MapKind::LuneX:
      return 14.0 / 29.0;
    case MapKind::Scaled:
      return m.R * AnalyticMap(m.inner).conformal_size();
    case MapKind::Rotated:
      return AnalyticMap(m.inner).conformal_size();
    case MapKind::CustomSeries:
      return m.coefficients.size() > 1 ? std::abs(m.coefficients[1]) : 0.0;
  }
  return 0.0;
}

std::optional<double> AnalyticMap::boundary_cusp_angle() const {
  const Impl& m = *impl_;
  switch (m.kind) {
    case MapKind::MobiusCircleX:
      return kPi;
    case MapKind::Scaled:
      if (m.R == 1.0) return AnalyticMap(m.inner).boundary_cusp_angle();
      return std::nullopt;
    case MapKind::Rotated: {
      auto inner = AnalyticMap(m.inner).boundary_cusp_angle();
      if (!inner) return std::nullopt;
      return std::remainder(*inner - m.theta, 2.0 * kPi);
    }
    default:
      return std::nullopt;
  }
}

ExactSeries lune_inner_series(std::size_t order) {
  std::vector<Rational> quad(order);
  if (order > 0) quad[0] = 1;
  if (order > 1) quad[1] = Rational(-82, 841);
  if (order > 2) quad[2] = 1;
  std::vector<Rational> lin(order);
  if (order > 0) lin[0] = 1;
  if (order > 1) lin[1] = 1;
  return Rational(29, 63) * (ExactSeries(std::move(lin)) - series::power(ExactSeries(std::move(quad)), Rational(1, 2)));
}

cd lune_inner(cd z) {
  // 1 - a z + z^2 = (1 - z/r)(1 - z/conj r) with |r| = 1; each factor keeps
  // a positive real part on the open disc.
  const double a = 82.0 / 841.0;
  const cd r(a / 2.0, std::sqrt(1.0 - a * a / 4.0));
  const cd root = std::sqrt(1.0 - z / r) * std::sqrt(1.0 - z / std::conj(r));
  return (29.0 / 63.0) * (1.0 + z - root);
}

std::vector<cd> phi_by_iteration(cd alpha, cd beta, std::size_t depth, std::size_t order) {
  if (!(std::abs(alpha) < std::abs(beta))) {
    throw Error(ErrorCode::PreconditionViolation, "phi_by_iteration needs |alpha| < |beta|");
  }
  if (depth < 1) throw Error(ErrorCode::PreconditionViolation, "depth must be >= 1");
  std::vector<cd> betas(depth);
  cd a = alpha, b = beta;
  for (std::size_t k = 0; k < depth; ++k) {
    betas[k] = b;
    const cd root = std::sqrt(1.0 - a / b);
    const cd na = 2.0 * b * (1.0 - root);
    const cd nb = 2.0 * b * (1.0 + root);
    a = na;
    b = nb;
  }
  auto compose_from = [&](std::size_t start) {
    std::vector<cd> g(order);
    if (order > 1) g[1] = 1.0;
    for (std::size_t k = depth; k-- > start;) {
      // g <- g - g^2 / (4 beta_k)
      std::vector<cd> sq(order);
      for (std::size_t i = 1; i < order; ++i) {
        if (g[i] == cd(0.0, 0.0)) continue;
        for (std::size_t j = 1; i + j < order; ++j) sq[i + j] += g[i] * g[j];
      }
      for (std::size_t i = 0; i < order; ++i) g[i] -= sq[i] / (4.0 * betas[k]);
    }
    return g;
  };
  std::vector<cd> full = compose_from(0);
  if (depth >= 2) {
    // drop the innermost step to compare depth with depth - 1
    betas.pop_back();
    --depth;
    const std::vector<cd> shorter = compose_from(0);
    for (std::size_t i = 0; i < order; ++i) {
      if (std::abs(full[i] - shorter[i]) > 1e-9 * std::max(1.0, std::abs(full[i]))) {
        throw Error(ErrorCode::NonConvergence,
                    "phi iteration not converged at coefficient " + std::to_string(i));
      }
    }
  }
  return full;
}

}  // namespace holo::confmaps
