#include "holo/dioph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holo/error.hpp"

namespace holo::dioph {

namespace {

constexpr unsigned long kMaxQ = 100000;

double to_double(const Integer& n) { return n.get_d(); }

Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

Integer power(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

void factor_into(Integer n, const Integer& sign_exp, std::map<unsigned long, Integer>& out) {
  for (unsigned long p = 2; n > 1; ++p) {
    if (Integer(p) * p > n) {
      if (!n.fits_ulong_p()) throw Error(ErrorCode::PreconditionViolation, "prime factor exceeds unsigned long");
      out[n.get_ui()] += sign_exp;
      break;
    }
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      out[p] += sign_exp;
    }
  }
}

// Nearest integer to a / b for b > 0, ties away from zero.
Integer nearest_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), Integer(2 * a + b).get_mpz_t(), Integer(2 * b).get_mpz_t());
  return q;
}

}  // namespace

FactoredRational FactoredRational::from_rational(const Rational& q) {
  if (q == 0) throw Error(ErrorCode::PreconditionViolation, "zero has no factorization");
  FactoredRational x;
  x.sign_ = sgn(q) < 0 ? -1 : 1;
  factor_into(abs(q.get_num()), 1, x.exponents_);
  factor_into(q.get_den(), -1, x.exponents_);
  std::erase_if(x.exponents_, [](const auto& kv) { return kv.second == 0; });
  return x;
}

FactoredRational FactoredRational::prime_power(unsigned long p, const Integer& e) {
  FactoredRational x;
  x.add(p, e);
  return x;
}

Integer FactoredRational::exponent(unsigned long p) const {
  const auto it = exponents_.find(p);
  return it == exponents_.end() ? Integer(0) : it->second;
}

Rational FactoredRational::value() const {
  Integer num = 1, den = 1;
  for (const auto& [p, e] : exponents_) {
    const Integer magnitude = abs(e);
    if (!magnitude.fits_ulong_p()) throw Error(ErrorCode::PreconditionViolation, "exponent too large to expand");
    (e > 0 ? num : den) *= power(Integer(p), magnitude.get_ui());
  }
  Rational q(sign_ * num, den);
  q.canonicalize();
  return q;
}

void FactoredRational::add(unsigned long p, const Integer& e) {
  if (e == 0) return;
  Integer& slot = exponents_[p];
  slot += e;
  if (slot == 0) exponents_.erase(p);
}

FactoredRational FactoredRational::operator*(const FactoredRational& other) const {
  FactoredRational x = *this;
  x.sign_ *= other.sign_;
  for (const auto& [p, e] : other.exponents_) x.add(p, e);
  return x;
}

FactoredRational FactoredRational::pow(const Integer& n) const {
  FactoredRational x;
  x.sign_ = (sign_ < 0 && mpz_odd_p(n.get_mpz_t())) ? -1 : 1;
  if (n == 0) return x;
  for (const auto& [p, e] : exponents_) x.exponents_[p] = e * n;
  return x;
}

FactoredRational FactoredRational::inverse() const { return pow(-1); }

std::string FactoredRational::to_string() const {
  std::string out = sign_ < 0 ? "-" : "";
  if (exponents_.empty()) return out + "1";
  bool first = true;
  for (const auto& [p, e] : exponents_) {
    if (!first) out += "*";
    out += std::to_string(p) + "^" + e.get_str();
    first = false;
  }
  return out;
}

double height(const FactoredRational& x) {
  double up = 0.0, down = 0.0;
  for (const auto& [p, e] : x.exponents()) {
    const double term = to_double(e) * std::log(static_cast<double>(p));
    (e > 0 ? up : down) += std::abs(term);
  }
  return std::max(up, down);
}

std::map<unsigned long, Integer> exact_log_height(const FactoredRational& x) {
  std::map<unsigned long, Integer> up, down;
  double up_value = 0.0, down_value = 0.0;
  for (const auto& [p, e] : x.exponents()) {
    const double term = std::abs(to_double(e)) * std::log(static_cast<double>(p));
    if (e > 0) {
      up[p] = e;
      up_value += term;
    } else {
      down[p] = -e;
      down_value += term;
    }
  }
  return up_value >= down_value ? up : down;
}

DirichletResult dirichlet_round(const std::vector<Integer>& n, unsigned long Q, const Integer& N) {
  if (Q == 0 || N < 1 || n.empty()) throw Error(ErrorCode::PreconditionViolation, "need Q >= 1, N >= 1, t >= 1");
  const unsigned long t = n.size();
  const Integer M = factorial(Q) * N;
  for (unsigned long q = 1; q <= Q; ++q) {
    DirichletResult out;
    out.q = q;
    out.r = M / q;
    const Integer rt = power(out.r, t);
    bool ok = true;
    for (const auto& ni : n) {
      const Integer p = nearest_quotient(ni, out.r);
      const Integer err = abs(ni - out.r * p);
      if (power(err, t) * Q > rt) {
        ok = false;
        break;
      }
      out.p.push_back(p);
      out.errors.push_back(err);
    }
    if (ok) return out;
  }
  throw Error(ErrorCode::SearchFailure, "no denominator q <= Q meets the Dirichlet bound");
}

CosetDecomposition coset_decompose(const std::vector<Integer>& gamma_exponents,
                                   const std::vector<FactoredRational>& generators, unsigned long Q,
                                   const Integer& N) {
  if (gamma_exponents.size() != generators.size()) {
    throw Error(ErrorCode::PreconditionViolation, "one exponent per generator");
  }
  const DirichletResult d = dirichlet_round(gamma_exponents, Q, N);
  CosetDecomposition out;
  out.r = d.r;
  out.p = d.p;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    out.eta = out.eta * generators[i].pow(d.p[i]);
    out.a0 = out.a0 * generators[i].pow(gamma_exponents[i] - d.r * d.p[i]);
    out.generator_height_sum += height(generators[i]);
  }
  out.height_a0 = height(out.a0);
  out.height_eta = height(out.eta);
  const double t = static_cast<double>(generators.size());
  out.height_bound = out.generator_height_sum * to_double(d.r) * std::pow(static_cast<double>(Q), -1.0 / t);
  if (out.height_a0 > out.height_bound * (1.0 + 1e-12) + 1e-12) {
    throw Error(ErrorCode::SearchFailure, "coset representative exceeds its height bound");
  }
  return out;
}

GFunctionConfig GFunctionConfig::power_log(double c, unsigned d) {
  GFunctionConfig g;
  g.c = c;
  g.power = 1.0 / (2.0 * d);
  g.log_power = 3.0;
  return g;
}

GFunctionConfig GFunctionConfig::pure_power(double c, double p) {
  GFunctionConfig g;
  g.c = c;
  g.power = p;
  g.log_power = 0.0;
  return g;
}

double GFunctionConfig::operator()(double t) const {
  if (shape == Shape::PowerLog) {
    if (log_power == 0.0) return c * std::pow(t, power);
    if (t <= 1.0) return 0.0;
    return c * std::pow(t, power) * std::pow(std::log(t), -log_power);
  }
  if (table.size() < 2) throw Error(ErrorCode::PreconditionViolation, "table needs two nodes");
  auto hi = std::upper_bound(table.begin(), table.end(), t, [](double x, const auto& node) { return x < node.first; });
  if (hi == table.begin()) return table.front().second;
  if (hi == table.end()) hi = std::prev(table.end());
  const auto lo = std::prev(hi);
  const double s = (t - lo->first) / (hi->first - lo->first);
  return lo->second + s * (hi->second - lo->second);
}

double GFunctionConfig::onset() const {
  if (shape == Shape::PowerLog) return log_power > 0.0 ? std::exp(log_power / power) : 0.0;
  double start = table.front().first;
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (table[i].second <= table[i - 1].second) start = table[i].first;
  }
  return start;
}

PlaceLabel PlaceLabel::parse(const std::string& text) {
  if (text == "inf" || text == "infinity") return {};
  std::size_t used = 0;
  unsigned long p = 0;
  try {
    p = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  const bool prime = used == text.size() && p >= 2 && mpz_probab_prime_p(Integer(p).get_mpz_t(), 30) != 0;
  if (!prime) throw Error(ErrorCode::SchemaError, "place must be 'inf' or a prime: " + text);
  return {false, p};
}

ChainResult effective_constant_chain(const ChainInput& in) {
  if (!(in.epsilon > 0.0)) throw Error(ErrorCode::PreconditionViolation, "epsilon must be positive");
  if (in.generators.empty()) throw Error(ErrorCode::PreconditionViolation, "need at least one generator");
  if (in.height_A < 0.0) throw Error(ErrorCode::PreconditionViolation, "h(A) must be nonnegative");
  ChainResult out;
  const auto& g = in.g;
  const double target = 2.0 / in.epsilon;
  const double onset = g.onset();
  if (g(onset) >= target) {
    out.c8 = std::max(onset, 1.0);
    out.c8_clamped = true;
  } else {
    double lo = onset, hi = std::max(2.0 * onset, 2.0);
    while (g(hi) < target) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw Error(ErrorCode::NonConvergence, "g never reaches 2/epsilon");
    }
    double prev = g(lo);
    for (int i = 1; i <= 64; ++i) {
      const double v = g(lo + (hi - lo) * i / 64.0);
      if (v < prev) throw Error(ErrorCode::OnsetError, "g is not increasing inside the bisection bracket");
      prev = v;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) >= target ? hi : lo) = mid;
    }
    out.c8 = std::max(hi, 1.0);
  }
  for (const auto& xi : in.generators) out.c9 += height(xi);
  const double t = static_cast<double>(in.generators.size());
  const double q_real = std::ceil(std::pow(2.0 * out.c8 * out.c9, t) * (1.0 - 1e-14));
  if (!(q_real <= static_cast<double>(kMaxQ))) throw Error(ErrorCode::PreconditionViolation, "Q too large");
  out.Q = std::max(1UL, static_cast<unsigned long>(q_real));
  out.base = (!in.place.archimedean && in.place.residual_characteristic == 2) ? 3 : 2;

  // N is the least power of the base strictly exceeding 2 c8 h(A) / (Q - 1)!.
  const Integer fact = factorial(out.Q - 1);
  Rational bound(2.0 * out.c8 * in.height_A);
  bound /= fact;
  out.N = 1;
  while (Rational(out.N) <= bound) {
    out.N *= out.base;
    ++out.N_exponent;
  }
  out.r_min = fact * out.N;
  const Integer full = fact * out.Q;
  out.n_exceeds_factorial_square = out.N > full * full;
  const double growth = in.c10 * to_double(full * out.N);
  out.c11 = in.c11 ? *in.c11 : (in.height_A + growth) / (1.0 + in.height_A);
  out.C_final = out.c11 * (1.0 + in.height_A);
  return out;
}

}  // namespace holo::dioph
