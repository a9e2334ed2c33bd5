#include "holo/padiczeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "holo/error.hpp"
#include "holo/hauptmodul.hpp"
#include "holo/parallel.hpp"

namespace holo::padiczeta {

using padic::agreement;

namespace {

constexpr unsigned kMaxKummerExponent = 60;
constexpr long kRouteACapBits = 24;
constexpr std::size_t kMaxCoefficients = 160;
constexpr long kMaxScanHeight = 1000;

void require_order(std::size_t order, std::size_t minimum) {
  if (order < minimum) {
    throw Error(ErrorCode::PreconditionViolation, "order must be at least " + std::to_string(minimum));
  }
}

Rational power_of_two(long e) {
  Integer two = 1;
  mpz_mul_2exp(two.get_mpz_t(), two.get_mpz_t(), static_cast<mp_bitcnt_t>(std::labs(e)));
  return e >= 0 ? Rational(two) : Rational(1, 1) / Rational(two);
}

// Odd-divisor sum of d^exponent.
Rational odd_divisor_sum(unsigned long n, long exponent) {
  Rational s = 0;
  for (unsigned long d = 1; d <= n; d += 2) {
    if (n % d != 0) continue;
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), d, static_cast<unsigned long>(std::labs(exponent)));
    s += exponent >= 0 ? Rational(pw) : Rational(Integer(1), pw);
  }
  s.canonicalize();
  return s;
}

std::uint64_t pow_mod_2_64(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e != 0) {
    if (e & 1U) r *= a;
    a *= a;
    e >>= 1U;
  }
  return r;
}

// 2^-N sum_{a odd < 2^N} a^n, known modulo 2^(64 - N).
PadicApprox unit_power_sum(std::uint64_t n, unsigned N) {
  const std::uint64_t count = std::uint64_t{1} << (N - 1);
  std::vector<std::uint64_t> partial(thread_count() == 0 ? 1 : thread_count(), 0);
  const std::size_t chunks = partial.size();
  parallel_for(chunks, [&](std::size_t c) {
    std::uint64_t acc = 0;
    for (std::uint64_t i = c; i < count; i += chunks) acc += pow_mod_2_64(2 * i + 1, n);
    partial[c] = acc;
  });
  std::uint64_t s = 0;
  for (std::uint64_t v : partial) s += v;
  Integer sum;
  mpz_import(sum.get_mpz_t(), 1, 1, sizeof(s), 0, 0, &s);
  return PadicApprox::from_rational(Rational(sum) / power_of_two(N), 64 - static_cast<long>(N));
}

ExactSeries eisenstein_in_x(long k, std::size_t order, const ExactSeries& qx) {
  return compose(eisenstein_star(k, order).expansion.coefficients, qx);
}

struct ProductSeries {
  ExactSeries positive;  // E*_{2k}(x)
  ExactSeries negative;  // E'_{-2k}(x)
  ExactSeries product;   // E*_{2k}(x) E'_{-2k}(x)
};

ProductSeries product_series(long k, std::size_t order) {
  const ExactSeries qx = q_of_x(std::max<std::size_t>(order, 5));
  ProductSeries s;
  s.positive = eisenstein_in_x(-k, order, qx.truncated(order));
  s.negative = eisenstein_in_x(k, order, qx.truncated(order));
  s.product = s.positive * s.negative;
  return s;
}

}  // namespace

QExpansion hauptmodul(std::size_t order) {
  require_order(order, 5);
  return {hauptmodul::x_of_q_series(order), 0};
}

ExactSeries q_of_x(std::size_t order) {
  require_order(order, 5);
  return hauptmodul::q_of_x_series(order);
}

std::vector<Rational> bernoulli_numbers(std::size_t n) {
  std::vector<Rational> a(n + 1), out(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    a[m] = Rational(1, static_cast<unsigned long>(m + 1));
    for (std::size_t j = m; j >= 1; --j) {
      a[j - 1] = static_cast<unsigned long>(j) * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    out[m] = a[0];
  }
  return out;
}

Rational deprived_zeta(long k) {
  if (k >= 0) throw Error(ErrorCode::PreconditionViolation, "deprived_zeta needs k < 0");
  const auto n = static_cast<std::size_t>(-2 * k);
  const Rational b = bernoulli_numbers(n)[n];
  Rational z = -b / Rational(static_cast<unsigned long>(n));
  z *= 1 - power_of_two(static_cast<long>(n) - 1);
  z.canonicalize();
  return z;
}

EisensteinSeries eisenstein_star(long k, std::size_t order) {
  if (k == 0) throw Error(ErrorCode::PreconditionViolation, "weight must be nonzero");
  require_order(order, 1);
  const long exponent = -2 * k - 1;
  EisensteinSeries e;
  e.rational_constant = k < 0;
  e.expansion.weight = static_cast<int>(-2 * k);
  e.expansion.coefficients = ExactSeries::generate(order, [&](std::size_t n) -> Rational {
    if (n == 0) return k < 0 ? Rational(deprived_zeta(k) / 2) : Rational(0);
    return odd_divisor_sum(n, exponent);
  });
  return e;
}

PadicApprox kummer_approximant(long k, unsigned t, long absolute_bits) {
  if (k <= 0) throw Error(ErrorCode::PreconditionViolation, "Kummer route needs k > 0");
  if (t > kMaxKummerExponent || (std::uint64_t{1} << t) <= static_cast<std::uint64_t>(k)) {
    throw Error(ErrorCode::PreconditionViolation, "need k < 2^t <= 2^60");
  }
  // m = k - 2^t < 0 and s = 1 + 2m = 1 - n.
  const std::uint64_t n = (std::uint64_t{1} << (t + 1)) - 2 * static_cast<std::uint64_t>(k);
  const Rational n_rational(Integer(std::to_string(n)));
  const long vn = *series::padic_valuation(n_rational, 2);
  const long needed = absolute_bits + vn;
  const auto N = static_cast<unsigned>((needed + 7) / 2);
  if (64 - static_cast<long>(N) - 1 < needed) {
    throw Error(ErrorCode::InsufficientPrecision, "unit sums modulo 2^64 cannot reach the requested precision");
  }
  const PadicApprox u = unit_power_sum(n, N);
  if (agreement(u, unit_power_sum(n, N + 1)) < needed) {
    throw Error(ErrorCode::InsufficientPrecision, "unit sums have not stabilised");
  }
  const PadicApprox value = -(u / PadicApprox::from_rational(n_rational, needed + 64));
  return value.truncated(absolute_bits);
}

RouteResult zeta2_route_a(long k, long absolute_bits) {
  if (k <= 0) throw Error(ErrorCode::PreconditionViolation, "Kummer route needs k > 0");
  unsigned t = 1;
  while ((std::uint64_t{1} << t) <= static_cast<std::uint64_t>(k)) ++t;
  const long work = absolute_bits + 4;
  PadicApprox a = kummer_approximant(k, t, work);
  PadicApprox b = kummer_approximant(k, t + 1, work);
  for (unsigned s = t + 2; s <= kMaxKummerExponent; ++s) {
    PadicApprox c = kummer_approximant(k, s, work);
    if (agreement(a, b) >= absolute_bits && agreement(b, c) >= absolute_bits) {
      return {c.truncated(absolute_bits), s};
    }
    a = std::move(b);
    b = std::move(c);
  }
  throw Error(ErrorCode::InsufficientPrecision, "Kummer approximants did not stabilise");
}

std::vector<OverconvergenceEstimate> overconvergence_estimates(long k, std::size_t count) {
  if (k <= 0) throw Error(ErrorCode::PreconditionViolation, "overconvergence route needs k > 0");
  const std::size_t order = count + 2;
  const ProductSeries s = product_series(k, order);
  std::vector<Rational> c(order);
  for (std::size_t n = 1; n < order; ++n) {
    if (s.positive[n] == 0) throw Error(ErrorCode::DivisionByZero, "vanishing x-coefficient");
    c[n] = -s.product[n] / s.positive[n];
  }
  std::vector<OverconvergenceEstimate> out;
  for (std::size_t n = 1; n <= count; ++n) {
    OverconvergenceEstimate e;
    e.constant = c[n];
    const auto v = series::padic_valuation(Rational(c[n] - c[n + 1]), 2);
    e.agreement = v ? *v : std::numeric_limits<long>::max();
    e.claimed = 12 * static_cast<long>(n) - *series::padic_valuation(s.positive[n], 2);
    out.push_back(e);
  }
  return out;
}

RouteResult zeta2_route_b(long k, long absolute_bits) {
  // The constant is half the zeta value.
  const long needed = absolute_bits - 1;
  for (std::size_t count = static_cast<std::size_t>(std::max(needed, 0L)) / 8 + 6; count <= kMaxCoefficients;
       count *= 2) {
    const auto est = overconvergence_estimates(k, count);
    for (std::size_t i = 0; i + 1 < est.size(); ++i) {
      if (est[i].agreement >= needed && est[i + 1].agreement >= needed) {
        const PadicApprox c = PadicApprox::from_rational(est[i].constant, needed);
        return {(PadicApprox::from_rational(2, absolute_bits + 64) * c).truncated(absolute_bits),
                static_cast<unsigned>(i + 3)};
      }
    }
  }
  throw Error(ErrorCode::InsufficientPrecision, "overconvergence estimates did not reach the precision");
}

ZetaValue zeta2(long k, long absolute_bits) {
  if (k == 0) throw Error(ErrorCode::PreconditionViolation, "k must be nonzero");
  ZetaValue z;
  if (k < 0) {
    z.exact = deprived_zeta(k);
    z.value = PadicApprox::from_rational(*z.exact, absolute_bits);
    z.route_a_bits = z.route_b_bits = absolute_bits;
    return z;
  }
  const RouteResult b = zeta2_route_b(k, absolute_bits);
  const RouteResult a = zeta2_route_a(k, std::min(absolute_bits, kRouteACapBits));
  const long common = std::min(a.value.absolute_precision(), b.value.absolute_precision());
  if (agreement(a.value, b.value) < common) {
    throw Error(ErrorCode::RouteDisagreement, "Kummer and overconvergence routes differ below 2^" +
                                                  std::to_string(common));
  }
  z.value = b.value;
  z.route_a_bits = a.value.absolute_precision();
  z.route_b_bits = b.value.absolute_precision();
  return z;
}

TypeReport h_series_and_types(long k, std::size_t order) {
  if (k <= 0) throw Error(ErrorCode::PreconditionViolation, "k must be positive");
  require_order(order, 10);
  const ProductSeries s = product_series(k, order);
  TypeReport r;
  r.weight_positive = s.positive;
  r.weight_negative = s.negative;
  r.product_constant_factor = s.positive[0];
  for (std::size_t n = 1; n < order; ++n) {
    if (s.positive[n].get_den() != 1) {
      throw Error(ErrorCode::TypeViolation, "E*_{2k}(x) coefficient not integral at n = " + std::to_string(n));
    }
  }
  const auto width = static_cast<std::size_t>(2 * k + 1);
  r.single_column = series::check_denominator_type(s.negative, {Rational(2 * k + 1)}, 0, order - 1);
  r.unit_columns = series::check_denominator_type(s.negative, std::vector<Rational>(width, Rational(1)), 0, order - 1);
  if (!r.unit_columns.ok) {
    throw Error(ErrorCode::TypeViolation,
                "E'_{-2k}(x) exceeds type [1..n]^(2k+1) at n = " + std::to_string(*r.unit_columns.first_failure));
  }
  const ZetaValue zeta = zeta2(k, 64);
  const PadicApprox c = zeta.value / PadicApprox::from_rational(2, 128);
  r.constant_bits = c.absolute_precision();
  for (std::size_t n = 0; n < order; ++n) {
    const PadicApprox h = c * PadicApprox::from_rational(s.positive[n], r.constant_bits + 64) +
                          PadicApprox::from_rational(s.product[n], r.constant_bits + 64);
    const long v = h.is_zero() ? h.absolute_precision() : h.valuation();
    r.product_valuations.push_back(v);
    // The radius bound is up to a constant, taken as the denominator of h_0.
    if (v < -12 * static_cast<long>(n) + std::min(0L, r.product_valuations.front())) {
      throw Error(ErrorCode::TypeViolation, "2-adic growth exceeds radius 2^12 at n = " + std::to_string(n));
    }
  }
  return r;
}

long scan_precision(long max_height) {
  if (max_height < 1) throw Error(ErrorCode::PreconditionViolation, "max_height must be positive");
  return static_cast<long>(std::ceil(20.0 * std::log2(static_cast<double>(max_height)))) + 8;
}

std::vector<Exception> zeta5_inequality_scan(long max_height) {
  const long bits = scan_precision(max_height);
  return zeta5_inequality_scan(max_height, zeta2(2, bits + 8).value);
}

std::vector<Exception> zeta5_inequality_scan(long max_height, const PadicApprox& zeta5) {
  if (max_height > kMaxScanHeight) throw Error(ErrorCode::PreconditionViolation, "max_height must be <= 1000");
  const long bits = scan_precision(max_height);
  if (zeta5.absolute_precision() < bits) {
    throw Error(ErrorCode::InsufficientPrecision, "zeta_2(5) is known to fewer bits than the scan needs");
  }
  if (zeta5.is_zero()) throw Error(ErrorCode::InsufficientPrecision, "zeta_2(5) is zero at its precision");
  const long vz = zeta5.valuation();
  const long known = zeta5.absolute_precision();
  std::vector<std::vector<Exception>> per_q(static_cast<std::size_t>(max_height));
  parallel_for(per_q.size(), [&](std::size_t idx) {
    const long q = static_cast<long>(idx) + 1;
    const long j = static_cast<long>(__builtin_ctzl(static_cast<unsigned long>(q)));
    const long odd = q >> j;
    // zeta - p/q = (zeta odd 2^j - p) / q; scale by 2^s to clear 2-adic denominators.
    const long s = std::max(0L, -(vz + j));
    Integer scaled = zeta5.unit_part() * odd;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(vz + j + s));
    const long cap = known + j + s;
    for (long p = -max_height; p <= max_height; ++p) {
      if (std::gcd(p, q) != 1) continue;
      Integer d = Integer(p);
      mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
      d = scaled - d;
      mpz_fdiv_r_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(cap));
      const long vd = d == 0 ? cap : static_cast<long>(mpz_scan1(d.get_mpz_t(), 0));
      const long v = vd - s - j;
      const double height = static_cast<double>(std::max(std::labs(p), q));
      const double threshold = 20.0 * std::log2(height);
      if (static_cast<double>(v) >= threshold) per_q[idx].push_back({p, q, v, threshold});
    }
  });
  std::vector<Exception> out;
  for (auto& v : per_q) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace holo::padiczeta
