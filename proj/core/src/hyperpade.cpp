#include "holo/hyperpade.hpp"

#include <cmath>
#include <string>

#include "holo/error.hpp"

namespace holo::hyperpade {

namespace {

Rational r_of(long v) { return Rational(v); }

// Coefficients of 2F1(a, b; c; x) up to termination or order.
std::vector<Rational> hyper_coefficients(const HypergeometricParams& p, std::size_t order) {
  std::vector<Rational> out(order);
  if (order == 0) return out;
  out[0] = 1;
  for (std::size_t k = 0; k + 1 < order; ++k) {
    const Rational kq = r_of(static_cast<long>(k));
    const Rational num = (p.a + kq) * (p.b + kq);
    if (num == 0) break;  // remaining coefficients vanish
    const Rational den = (p.c + kq) * r_of(static_cast<long>(k + 1));
    if (den == 0) {
      throw Error(ErrorCode::PoleError,
                  "2F1 lower parameter reaches " + series::to_string(p.c + kq) + " at k=" +
                      std::to_string(k) + " before termination");
    }
    out[k + 1] = out[k] * num / den;
  }
  return out;
}

Rational polynomial_value(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational v = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
  return v;
}

}  // namespace

Rational binomial(const Rational& t, unsigned long k) {
  Rational out = 1;
  for (unsigned long i = 0; i < k; ++i) {
    out *= (t - r_of(static_cast<long>(i)));
    out /= r_of(static_cast<long>(i + 1));
  }
  return out;
}

ExactSeries hyper_2f1_poly(const HypergeometricParams& p, std::size_t order) {
  if (order < 1) throw Error(ErrorCode::PreconditionViolation, "2F1 order must be at least 1");
  return ExactSeries(hyper_coefficients(p, order));
}

PadeReport pade_identity_check(unsigned m, unsigned n, const Rational& nu, std::size_t order) {
  const std::size_t top = static_cast<std::size_t>(m) + n + 1;
  if (order < top + 1) {
    throw Error(ErrorCode::PreconditionViolation, "pade_identity_check needs order >= m+n+2");
  }
  const Rational lower = r_of(-static_cast<long>(m + n));
  const ExactSeries p = hyper_2f1_poly({-nu - r_of(n), r_of(-static_cast<long>(m)), lower}, order);
  const ExactSeries q = hyper_2f1_poly({nu - r_of(m), r_of(-static_cast<long>(n)), lower}, order);
  // (1 - x)^nu is the binomial series in -x.
  const ExactSeries remainder = p - series::rescale(series::binomial_series(nu, order), -1) * q;

  PadeReport report;
  report.expected_coefficient = (m % 2 ? -1 : 1) * binomial(r_of(n) + nu, top) /
                                binomial(r_of(static_cast<long>(m + n)), m);
  for (std::size_t k = 0; k < top; ++k) {
    if (remainder[k] != 0) {
      throw Error(ErrorCode::IdentityFailure,
                  "Pade remainder has nonzero x^" + std::to_string(k) + " coefficient " +
                      series::to_string(remainder[k]));
    }
  }
  report.leading_coefficient = remainder[top];
  report.remainder_valuation = top;
  if (report.leading_coefficient != report.expected_coefficient) {
    throw Error(ErrorCode::IdentityFailure,
                "Pade leading coefficient " + series::to_string(report.leading_coefficient) +
                    " differs from " + series::to_string(report.expected_coefficient) +
                    " at x^" + std::to_string(top));
  }
  if (report.leading_coefficient == 0) {
    report.remainder_valuation = order;
    for (std::size_t k = top + 1; k < order; ++k) {
      if (remainder[k] != 0) {
        report.remainder_valuation = k;
        break;
      }
    }
  }
  return report;
}

std::vector<Rational> dihedral_coefficient_poly(const Rational& nu, unsigned n) {
  const long nn = n;
  std::vector<Rational> c = hyper_coefficients({-nu - r_of(nn), r_of(-nn), r_of(-2 * nn)}, n + 1);
  const Rational central = binomial(r_of(2 * nn), n);
  for (auto& q : c) q *= central;
  return c;
}

DihedralPair dihedral_generators(const Rational& nu, const Rational& x, std::size_t order) {
  DihedralPair pair{nu, x, ExactSeries(order), ExactSeries(order)};
  std::vector<Rational> a(order), b(order);
  for (std::size_t n = 0; n < order; ++n) {
    a[n] = polynomial_value(dihedral_coefficient_poly(nu, static_cast<unsigned>(n)), x);
    b[n] = polynomial_value(dihedral_coefficient_poly(-nu, static_cast<unsigned>(n)), x);
  }

  // Diagonal of (1 - xy)^nu / (1 - y - z + xyz): c_{i,j} = c_{i-1,j} + c_{i,j-1} - x c_{i-1,j-1}.
  std::vector<std::vector<Rational>> grid(order, std::vector<Rational>(order));
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) {
      if (i == 0 && j == 0) {
        grid[i][j] = 1;
        continue;
      }
      Rational v = 0;
      if (i > 0) v += grid[i - 1][j];
      if (j > 0) v += grid[i][j - 1];
      if (i > 0 && j > 0) v -= x * grid[i - 1][j - 1];
      grid[i][j] = v;
    }
  }
  const ExactSeries factor = series::rescale(series::binomial_series(nu, order), -x);
  for (std::size_t n = 0; n < order; ++n) {
    Rational diag = 0;
    for (std::size_t i = 0; i <= n; ++i) diag += factor[i] * grid[n - i][n];
    if (diag != a[n]) {
      throw Error(ErrorCode::IdentityFailure,
                  "A_nu disagrees with the bivariate diagonal at y^" + std::to_string(n));
    }
  }
  pair.A = ExactSeries(std::move(a));
  pair.B = ExactSeries(std::move(b));
  return pair;
}

ExactSeries dihedral_ode_residual(const ExactSeries& f, const Rational& nu, const Rational& x) {
  if (f.order() < 3) {
    throw Error(ErrorCode::PreconditionViolation, "ODE residual needs order >= 3");
  }
  const std::size_t out_order = f.order() - 2;
  const ExactSeries f1 = series::derivative(f).truncated(out_order);
  const ExactSeries f2 = series::derivative(series::derivative(f));
  const ExactSeries f0 = f.truncated(out_order);
  const Rational x2 = x * x;
  const ExactSeries q({Rational(1), Rational(-4) + 2 * x, x2});
  const ExactSeries lin({3 * (x - 2), 3 * x2});
  auto pad = [out_order](const ExactSeries& s) {
    std::vector<Rational> c(out_order);
    for (std::size_t i = 0; i < std::min(out_order, s.order()); ++i) c[i] = s[i];
    return ExactSeries(std::move(c));
  };
  return pad(q) * f2 + pad(lin) * f1 + (x2 * (1 - nu * nu)) * f0;
}

std::pair<std::complex<double>, std::complex<double>> companion_values(double nu, double x,
                                                                       std::complex<double> y) {
  using C = std::complex<double>;
  const C quad = 1.0 - 4.0 * y + 2.0 * x * y + x * x * y * y;
  if (std::abs(quad) < 1e-12) {
    throw Error(ErrorCode::Singularity, "1-4y+2xy+x^2y^2 vanishes");
  }
  const C root = std::sqrt(quad);
  const C arg = (x * x * y + x - 2.0) / (2.0 * std::sqrt(C(1.0 - x, 0.0)));
  const C theta = std::acos(arg);
  return {std::cos(nu * theta) / root, std::sin(nu * theta) / root};
}

std::optional<std::size_t> disc_property_violation(const Rational& nu, const Rational& x,
                                                   unsigned long p, std::size_t order) {
  const series::Integer r = nu.get_den();
  if (!mpz_divisible_ui_p(r.get_mpz_t(), p)) {
    throw Error(ErrorCode::PreconditionViolation, "disc property requires p | r");
  }
  const long vr = series::padic_valuation(r, p);
  const long slope = static_cast<long>(p - 1) * vr + 1;
  const DihedralPair pair = dihedral_generators(nu, x, order);
  for (std::size_t n = 0; n < order; ++n) {
    const auto v = series::padic_valuation(pair.A[n], p);
    if (!v) continue;
    if (static_cast<long>(p - 1) * *v < -static_cast<long>(n) * slope) return n;
  }
  return std::nullopt;
}

LogFamily log_family(const Rational& x, std::size_t order) {
  if (order < 2) throw Error(ErrorCode::PreconditionViolation, "log_family order must be >= 2");
  LogFamily fam;
  if (x == 2) {
    fam.pi_form = true;
    std::vector<Rational> a(order), asin(order);
    for (std::size_t n = 0; 2 * n < order; ++n) {
      const Rational c = binomial(r_of(static_cast<long>(2 * n)), n);
      a[2 * n] = c;
      if (2 * n + 1 < order) asin[2 * n + 1] = 2 * c / r_of(static_cast<long>(2 * n + 1));
    }
    fam.A = ExactSeries(std::move(a));
    fam.B = Rational(-2) * (fam.A * ExactSeries(std::move(asin)));
    fam.H.resize(order);
    for (std::size_t n = 0; n < order; ++n) {
      fam.H[n] = fam.B[n].get_d() - M_PI * fam.A[n].get_d();
    }
    return fam;
  }
  const ExactSeries quad({Rational(1), 2 * x - 4, x * x});
  auto full = [order](const ExactSeries& s) {
    std::vector<Rational> c(order);
    for (std::size_t i = 0; i < std::min(order, s.order()); ++i) c[i] = s[i];
    return ExactSeries(std::move(c));
  };
  const ExactSeries q = full(quad);
  fam.A = series::power(q, Rational(-1, 2));
  const ExactSeries root = series::power(q, Rational(1, 2));
  // g = 1 - x(1 + xy - sqrt Q)/2 has g(0) = 1.
  const ExactSeries inner = full(ExactSeries({Rational(1), x})) - root;
  const ExactSeries g = ExactSeries::constant(1, order) - (x / 2) * inner;
  fam.B = Rational(2) * (fam.A * series::log(g));
  if (x < 1) {
    const double l = std::log1p(-x.get_d());
    fam.H.resize(order);
    for (std::size_t n = 0; n < order; ++n) fam.H[n] = fam.B[n].get_d() - l * fam.A[n].get_d();
  }
  return fam;
}

ExactSeries catalan_operator(const ExactSeries& f) {
  if (f.order() < 3) throw Error(ErrorCode::PreconditionViolation, "operator needs order >= 3");
  const std::size_t out = f.order() - 2;
  const ExactSeries d1 = series::derivative(f).truncated(out);
  const ExactSeries d2 = series::derivative(series::derivative(f));
  std::vector<Rational> sq(out), xsq(out);
  const Rational poly[3] = {1, 32, 256};
  for (std::size_t i = 0; i < 3; ++i) {
    if (i < out) sq[i] = poly[i];
    if (i + 1 < out) xsq[i + 1] = poly[i];
  }
  return ExactSeries(std::move(xsq)) * d2 + ExactSeries(std::move(sq)) * d1 -
         Rational(4) * f.truncated(out);
}

CatalanFamily catalan_family(std::size_t order, std::size_t d_terms) {
  if (order < 4) throw Error(ErrorCode::PreconditionViolation, "catalan_family order must be >= 4");
  if (d_terms < 2) throw Error(ErrorCode::PreconditionViolation, "d_terms must be >= 2");
  CatalanFamily fam;
  const ExactSeries hyp = series::rescale(
      hyper_2f1_poly({Rational(1, 2), Rational(1, 2), Rational(1)}, order), Rational(-16));
  const ExactSeries root = series::rescale(series::binomial_series(Rational(1, 2), order), 16);
  fam.A = root * hyp;

  // L B = 1 + 16x with B(0) = 0.
  std::vector<Rational> b(order);
  for (std::size_t n = 0; n + 1 < order; ++n) {
    const long nl = static_cast<long>(n);
    Rational rhs = n == 0 ? Rational(1) : n == 1 ? Rational(16) : Rational(0);
    rhs -= Rational(32 * nl * nl - 4) * b[n];
    if (n >= 1) rhs -= Rational(256 * (nl - 1) * (nl - 1)) * b[n - 1];
    b[n + 1] = rhs / Rational((nl + 1) * (nl + 1));
  }
  fam.B = ExactSeries(std::move(b));

  // D = sum_k c_k (1+16x)^{k+1}, c_k = -(1/4) 16^k (k!)^4 / ((2k+1)!)^2.
  std::vector<Rational> ck(d_terms);
  {
    series::Integer fact = 1, fact2 = 1, sixteen = 1;
    for (std::size_t k = 0; k < d_terms; ++k) {
      if (k > 0) {
        fact *= static_cast<unsigned long>(k);
        fact2 *= static_cast<unsigned long>(2 * k) * static_cast<unsigned long>(2 * k + 1);
        sixteen *= 16;
      }
      const series::Integer f2 = fact * fact;
      Rational v(sixteen * f2 * f2, 4 * fact2 * fact2);
      v.canonicalize();
      ck[k] = -v;
    }
  }
  fam.D.assign(order, Rational(0));
  for (std::size_t j = 0; j < order; ++j) {
    series::Integer sixteen_j;
    mpz_ui_pow_ui(sixteen_j.get_mpz_t(), 16, j);
    Rational acc = 0;
    for (std::size_t k = 0; k < d_terms; ++k) {
      if (j > k + 1) continue;
      series::Integer binom;
      mpz_bin_uiui(binom.get_mpz_t(), k + 1, j);
      acc += ck[k] * Rational(binom);
    }
    fam.D[j] = acc * Rational(sixteen_j);
  }

  // Truncation error of D_j is divisible by 2^{2 d_terms - 2}.
  const long d_bits = 2 * static_cast<long>(d_terms) - 2;
  fam.precision_bits = d_bits;
  for (std::size_t j = 0; j < order; ++j) {
    if (fam.A[j] == 0) continue;
    const Rational g = 2 * (fam.B[j] - fam.D[j]) / fam.A[j];
    const long bits = d_bits + 1 - *series::padic_valuation(fam.A[j], 2);
    fam.precision_bits = std::min(fam.precision_bits, bits);
    fam.g2_estimates.emplace_back(j, g);
  }
  const Rational& g0 = fam.g2_estimates.front().second;
  for (const auto& [j, g] : fam.g2_estimates) {
    const auto v = series::padic_valuation(Rational(g - g0), 2);
    if (v && *v < fam.precision_bits) {
      throw Error(ErrorCode::InconsistentG2,
                  "G2 estimate from x^" + std::to_string(j) + " differs from x^0 at 2^" +
                      std::to_string(*v));
    }
  }
  return fam;
}

}  // namespace holo::hyperpade
