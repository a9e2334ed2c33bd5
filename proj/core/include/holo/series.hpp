#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace holo::series {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
/// Parses "a", "-a" or "a/b" into lowest terms.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// v_p(q); nullopt for q = 0.
std::optional<long> padic_valuation(const Rational& q, unsigned long p);
long padic_valuation(const Integer& n, unsigned long p);

/// Truncated power series with exact rational coefficients. Coefficients at
/// powers >= order() are unknown and never read.
class ExactSeries {
 public:
  ExactSeries() = default;
  explicit ExactSeries(std::size_t order);
  explicit ExactSeries(std::vector<Rational> coefficients);

  static ExactSeries constant(const Rational& c, std::size_t order);
  static ExactSeries variable(std::size_t order);
  static ExactSeries generate(std::size_t order, const std::function<Rational(std::size_t)>& coeff);

  std::size_t order() const noexcept { return c_.size(); }
  const Rational& operator[](std::size_t n) const;
  const std::vector<Rational>& coefficients() const noexcept { return c_; }

  ExactSeries truncated(std::size_t order) const;
  bool is_zero() const;
  /// Index of the first nonzero coefficient, nullopt if all known ones vanish.
  std::optional<std::size_t> valuation() const;

  friend bool operator==(const ExactSeries& a, const ExactSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<Rational> c_;
};

ExactSeries operator+(const ExactSeries& a, const ExactSeries& b);
ExactSeries operator-(const ExactSeries& a, const ExactSeries& b);
ExactSeries operator-(const ExactSeries& a);
ExactSeries operator*(const ExactSeries& a, const ExactSeries& b);
ExactSeries operator*(const Rational& s, const ExactSeries& a);

ExactSeries derivative(const ExactSeries& a);
/// Antiderivative with the given constant; the order grows by one since the
/// new top coefficient is determined by the old one.
ExactSeries integral(const ExactSeries& a, const Rational& constant = 0);
/// f(g(z)); g must have zero constant term.
ExactSeries compose(const ExactSeries& f, const ExactSeries& g);
/// 1/a; a[0] must be nonzero.
ExactSeries reciprocal(const ExactSeries& a);
/// Compositional inverse; a[0] = 0 and a[1] != 0.
ExactSeries reversion(const ExactSeries& a);
/// a^nu for a[0] = 1.
ExactSeries power(const ExactSeries& a, const Rational& nu);
/// log(a) for a[0] = 1.
ExactSeries log(const ExactSeries& a);
/// exp(a) for a[0] = 0.
ExactSeries exp(const ExactSeries& a);
/// (1 + z)^nu truncated at order.
ExactSeries binomial_series(const Rational& nu, std::size_t order);
/// a(c z).
ExactSeries rescale(const ExactSeries& a, const Rational& c);

/// lcm(1, ..., n), memoized.
Integer lcm_upto(unsigned long n);

/// The m x r array of a denominator type together with the optional
/// integration exponents e.
class DenominatorType {
 public:
  /// Validates the staircase shape of every column; throws SHAPE_ERROR.
  static DenominatorType from_matrix(std::vector<std::vector<Rational>> b,
                                     std::vector<unsigned long> e = {});
  /// Builds m rows from (u_j, b_j) column descriptions.
  static DenominatorType from_columns(std::size_t m,
                                      const std::vector<std::pair<std::size_t, Rational>>& columns,
                                      std::vector<unsigned long> e = {});

  std::size_t rows() const noexcept { return b_.size(); }
  std::size_t cols() const noexcept { return b_.empty() ? 0 : b_.front().size(); }
  const Rational& entry(std::size_t i, std::size_t j) const { return b_.at(i).at(j); }
  const std::vector<std::vector<Rational>>& matrix() const noexcept { return b_; }
  const std::vector<std::size_t>& u_indices() const noexcept { return u_; }
  const std::vector<unsigned long>& e_vector() const noexcept { return e_; }
  Rational row_sum(std::size_t i) const;
  /// Last-row value b_j of column j.
  const Rational& column_height(std::size_t j) const;

 private:
  std::vector<std::vector<Rational>> b_;
  std::vector<std::size_t> u_;
  std::vector<unsigned long> e_;
};

struct TauForms {
  Rational row_sum_form;  // (1/m^2) sum (2i-1) sigma_i
  Rational closed_form;   // sigma_m - (1/m^2) sum u_j^2 b_j
};

TauForms tau_forms(const DenominatorType& b);
/// Both forms, checked to agree exactly.
Rational tau(const DenominatorType& b);

struct DenominatorCheck {
  bool ok = true;
  std::optional<std::size_t> first_failure;
};

/// True iff coeff_n * n^e * prod_j lcm_upto(floor(b_j n)) is integral for
/// 1 <= n <= N.
DenominatorCheck check_denominator_type(const ExactSeries& f, const std::vector<Rational>& b_row,
                                        unsigned long e, std::size_t N);

}  // namespace holo::series
