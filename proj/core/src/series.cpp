#include "holo/series.hpp"

#include <algorithm>
#include <mutex>

#include "holo/error.hpp"

namespace holo::series {

namespace {

[[noreturn]] void precondition(const std::string& what) {
  throw Error(ErrorCode::PreconditionViolation, what);
}

std::size_t min_order(const ExactSeries& a, const ExactSeries& b) {
  return std::min(a.order(), b.order());
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  Rational q;
  auto trimmed = text;
  trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(), ::isspace), trimmed.end());
  if (trimmed.empty() || q.set_str(trimmed, 10) != 0) {
    throw Error(ErrorCode::PreconditionViolation, "not a rational: '" + text + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

long padic_valuation(const Integer& n, unsigned long p) {
  if (n == 0) precondition("valuation of zero");
  if (p < 2) precondition("prime must be at least 2");
  mpz_class m = abs(n);
  long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

std::optional<long> padic_valuation(const Rational& q, unsigned long p) {
  if (q == 0) return std::nullopt;
  return padic_valuation(Integer(q.get_num()), p) - padic_valuation(Integer(q.get_den()), p);
}

// ---- ExactSeries ----------------------------------------------------------

ExactSeries::ExactSeries(std::size_t order) : c_(order) {}

ExactSeries::ExactSeries(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {
  for (auto& q : c_) q.canonicalize();
}

ExactSeries ExactSeries::constant(const Rational& c, std::size_t order) {
  ExactSeries s(order);
  if (order > 0) s.c_[0] = c;
  return s;
}

ExactSeries ExactSeries::variable(std::size_t order) {
  ExactSeries s(order);
  if (order > 1) s.c_[1] = 1;
  return s;
}

ExactSeries ExactSeries::generate(std::size_t order,
                                  const std::function<Rational(std::size_t)>& coeff) {
  ExactSeries s(order);
  for (std::size_t n = 0; n < order; ++n) s.c_[n] = coeff(n);
  return s;
}

const Rational& ExactSeries::operator[](std::size_t n) const {
  if (n >= c_.size()) {
    precondition("coefficient " + std::to_string(n) + " beyond truncation order " +
                 std::to_string(c_.size()));
  }
  return c_[n];
}

ExactSeries ExactSeries::truncated(std::size_t order) const {
  if (order > c_.size()) precondition("cannot extend a truncated series");
  return ExactSeries(std::vector<Rational>(c_.begin(), c_.begin() + static_cast<long>(order)));
}

bool ExactSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

std::optional<std::size_t> ExactSeries::valuation() const {
  for (std::size_t n = 0; n < c_.size(); ++n) {
    if (c_[n] != 0) return n;
  }
  return std::nullopt;
}

ExactSeries operator+(const ExactSeries& a, const ExactSeries& b) {
  const std::size_t n = min_order(a, b);
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
  return ExactSeries(std::move(out));
}

ExactSeries operator-(const ExactSeries& a, const ExactSeries& b) {
  const std::size_t n = min_order(a, b);
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
  return ExactSeries(std::move(out));
}

ExactSeries operator-(const ExactSeries& a) {
  std::vector<Rational> out(a.coefficients());
  for (auto& q : out) q = -q;
  return ExactSeries(std::move(out));
}

ExactSeries operator*(const ExactSeries& a, const ExactSeries& b) {
  const std::size_t n = min_order(a, b);
  std::vector<Rational> out(n);
  Rational t;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b[j] == 0) continue;
      t = a[i] * b[j];
      out[i + j] += t;
    }
  }
  return ExactSeries(std::move(out));
}

ExactSeries operator*(const Rational& s, const ExactSeries& a) {
  std::vector<Rational> out(a.coefficients());
  for (auto& q : out) q *= s;
  return ExactSeries(std::move(out));
}

ExactSeries derivative(const ExactSeries& a) {
  if (a.order() == 0) return a;
  std::vector<Rational> out(a.order() - 1);
  for (std::size_t n = 1; n < a.order(); ++n) out[n - 1] = a[n] * Rational(static_cast<long>(n));
  return ExactSeries(std::move(out));
}

ExactSeries integral(const ExactSeries& a, const Rational& constant) {
  std::vector<Rational> out(a.order() + 1);
  out[0] = constant;
  for (std::size_t n = 0; n < a.order(); ++n) out[n + 1] = a[n] / Rational(static_cast<long>(n + 1));
  return ExactSeries(std::move(out));
}

ExactSeries compose(const ExactSeries& f, const ExactSeries& g) {
  if (g.order() > 0 && g[0] != 0) precondition("compose: inner series has nonzero constant term");
  const std::size_t n = min_order(f, g);
  if (n == 0) return ExactSeries(0);
  const ExactSeries inner = g.truncated(n);
  // Horner from the top; each product is truncated at n.
  ExactSeries acc = ExactSeries::constant(f[n - 1], n);
  for (std::size_t k = n - 1; k-- > 0;) {
    acc = acc * inner;
    std::vector<Rational> c(acc.coefficients());
    c[0] += f[k];
    acc = ExactSeries(std::move(c));
  }
  return acc;
}

ExactSeries reciprocal(const ExactSeries& a) {
  if (a.order() == 0) return a;
  if (a[0] == 0) precondition("reciprocal: series has zero constant term");
  const std::size_t n = a.order();
  std::vector<Rational> out(n);
  const Rational inv0 = 1 / a[0];
  out[0] = inv0;
  Rational acc;
  for (std::size_t k = 1; k < n; ++k) {
    acc = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      if (a[j] != 0) acc += a[j] * out[k - j];
    }
    out[k] = -acc * inv0;
  }
  return ExactSeries(std::move(out));
}

ExactSeries reversion(const ExactSeries& a) {
  if (a.order() < 2 || a[0] != 0 || a[1] == 0) {
    precondition("reversion: series must start a1*z with a1 != 0");
  }
  const std::size_t n = a.order();
  // Lagrange inversion: [z^k] g = (1/k) [w^{k-1}] (w / a(w))^k.
  std::vector<Rational> shifted(a.coefficients().begin() + 1, a.coefficients().end());
  const ExactSeries h = reciprocal(ExactSeries(std::move(shifted)));  // order n-1
  std::vector<Rational> out(n);
  ExactSeries hk = ExactSeries::constant(1, n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    hk = hk * h;
    out[k] = hk[k - 1] / Rational(static_cast<long>(k));
  }
  return ExactSeries(std::move(out));
}

ExactSeries power(const ExactSeries& a, const Rational& nu) {
  if (a.order() == 0) return a;
  if (a[0] != 1) precondition("power: constant term must be 1");
  const std::size_t n = a.order();
  std::vector<Rational> out(n);
  out[0] = 1;
  const Rational nu1 = nu + 1;
  Rational acc;
  for (std::size_t k = 1; k < n; ++k) {
    acc = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      if (a[j] == 0) continue;
      acc += (nu1 * Rational(static_cast<long>(j)) - Rational(static_cast<long>(k))) * a[j] * out[k - j];
    }
    out[k] = acc / Rational(static_cast<long>(k));
  }
  return ExactSeries(std::move(out));
}

ExactSeries log(const ExactSeries& a) {
  if (a.order() == 0) return a;
  if (a[0] != 1) precondition("log: constant term must be 1");
  const ExactSeries q = derivative(a) * reciprocal(a.truncated(a.order() - 1));
  return integral(q, 0);
}

ExactSeries exp(const ExactSeries& a) {
  if (a.order() == 0) return a;
  if (a[0] != 0) precondition("exp: constant term must be 0");
  const std::size_t n = a.order();
  std::vector<Rational> out(n);
  out[0] = 1;
  Rational acc;
  for (std::size_t k = 1; k < n; ++k) {
    acc = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      if (a[j] != 0) acc += Rational(static_cast<long>(j)) * a[j] * out[k - j];
    }
    out[k] = acc / Rational(static_cast<long>(k));
  }
  return ExactSeries(std::move(out));
}

ExactSeries binomial_series(const Rational& nu, std::size_t order) {
  std::vector<Rational> out(order);
  if (order == 0) return ExactSeries(std::move(out));
  out[0] = 1;
  for (std::size_t k = 1; k < order; ++k) {
    out[k] = out[k - 1] * (nu - Rational(static_cast<long>(k - 1))) / Rational(static_cast<long>(k));
  }
  return ExactSeries(std::move(out));
}

ExactSeries rescale(const ExactSeries& a, const Rational& c) {
  std::vector<Rational> out(a.coefficients());
  Rational pw = 1;
  for (auto& q : out) {
    q *= pw;
    pw *= c;
  }
  return ExactSeries(std::move(out));
}

// ---- lcm table ------------------------------------------------------------

Integer lcm_upto(unsigned long n) {
  static std::mutex mu;
  static std::vector<Integer> table{Integer(1), Integer(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) {
    Integer next;
    mpz_lcm_ui(next.get_mpz_t(), table.back().get_mpz_t(), table.size());
    table.push_back(std::move(next));
  }
  return table[n];
}

// ---- denominator types ----------------------------------------------------

DenominatorType DenominatorType::from_matrix(std::vector<std::vector<Rational>> b,
                                             std::vector<unsigned long> e) {
  DenominatorType d;
  const std::size_t m = b.size();
  const std::size_t r = m ? b.front().size() : 0;
  for (const auto& row : b) {
    if (row.size() != r) throw Error(ErrorCode::ShapeError, "ragged b matrix");
  }
  if (!e.empty() && e.size() != m) {
    throw Error(ErrorCode::ShapeError, "e vector length differs from row count");
  }
  d.u_.assign(r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    std::size_t u = 0;
    while (u < m && b[u][j] == 0) ++u;
    for (std::size_t i = u; i < m; ++i) {
      if (b[i][j] < 0 || b[i][j] != b[u][j]) {
        throw Error(ErrorCode::ShapeError,
                    "column " + std::to_string(j + 1) + " is not of staircase shape");
      }
    }
    d.u_[j] = u;
  }
  d.b_ = std::move(b);
  d.e_ = std::move(e);
  return d;
}

DenominatorType DenominatorType::from_columns(
    std::size_t m, const std::vector<std::pair<std::size_t, Rational>>& columns,
    std::vector<unsigned long> e) {
  std::vector<std::vector<Rational>> b(m, std::vector<Rational>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const auto& [u, height] = columns[j];
    if (u > m) throw Error(ErrorCode::ShapeError, "leading-zero count exceeds m");
    for (std::size_t i = u; i < m; ++i) b[i][j] = height;
  }
  return from_matrix(std::move(b), std::move(e));
}

Rational DenominatorType::row_sum(std::size_t i) const {
  Rational s = 0;
  for (const auto& q : b_.at(i)) s += q;
  return s;
}

const Rational& DenominatorType::column_height(std::size_t j) const {
  return b_.back().at(j);
}

TauForms tau_forms(const DenominatorType& b) {
  TauForms t;
  const std::size_t m = b.rows();
  if (m == 0) return t;
  const Rational m2(static_cast<long>(m * m));
  for (std::size_t i = 0; i < m; ++i) {
    t.row_sum_form += Rational(static_cast<long>(2 * i + 1)) * b.row_sum(i);
  }
  t.row_sum_form /= m2;
  Rational staircase = 0;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const auto u = static_cast<long>(b.u_indices()[j]);
    staircase += Rational(u * u) * b.column_height(j);
  }
  t.closed_form = b.row_sum(m - 1) - staircase / m2;
  return t;
}

Rational tau(const DenominatorType& b) {
  const TauForms t = tau_forms(b);
  if (t.row_sum_form != t.closed_form) {
    throw Error(ErrorCode::ShapeError, "tau closed form disagrees with row-sum form");
  }
  return t.closed_form;
}

DenominatorCheck check_denominator_type(const ExactSeries& f, const std::vector<Rational>& b_row,
                                        unsigned long e, std::size_t N) {
  if (N > f.order()) precondition("check_denominator_type: N exceeds truncation order");
  DenominatorCheck result;
  for (std::size_t n = 1; n <= N && n < f.order(); ++n) {
    Rational scaled = f[n];
    if (scaled == 0) continue;
    Integer factor;
    mpz_ui_pow_ui(factor.get_mpz_t(), n, e);
    for (const auto& bj : b_row) {
      Rational bn = bj * Rational(static_cast<long>(n));
      Integer fl;
      mpz_fdiv_q(fl.get_mpz_t(), bn.get_num_mpz_t(), bn.get_den_mpz_t());
      factor *= lcm_upto(fl.get_ui());
    }
    scaled *= Rational(factor);
    if (scaled.get_den() != 1) {
      result.ok = false;
      result.first_failure = n;
      return result;
    }
  }
  return result;
}

}  // namespace holo::series
