#include "holo/padic.hpp"

#include <algorithm>

#include "holo/error.hpp"

namespace holo::padic {

namespace {

Integer mod_power_of_two(const Integer& x, long bits) {
  Integer r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(std::max(bits, 0L)));
  return r;
}

Integer shifted_left(const Integer& x, long bits) {
  Integer r;
  mpz_mul_2exp(r.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  return r;
}

}  // namespace

PadicApprox::PadicApprox(Integer unit, long valuation, long precision)
    : unit_(std::move(unit)), valuation_(valuation), precision_(precision) {}

PadicApprox PadicApprox::zero(long absolute_precision) { return PadicApprox(0, absolute_precision, 0); }

PadicApprox PadicApprox::normalized(Integer value, long scale, long absolute_precision) {
  value = mod_power_of_two(value, absolute_precision - scale);
  if (value == 0) return zero(absolute_precision);
  const long v = static_cast<long>(mpz_scan1(value.get_mpz_t(), 0));
  mpz_fdiv_q_2exp(value.get_mpz_t(), value.get_mpz_t(), static_cast<mp_bitcnt_t>(v));
  return PadicApprox(std::move(value), scale + v, absolute_precision - scale - v);
}

PadicApprox PadicApprox::from_rational(const Rational& q, long absolute_precision) {
  if (q == 0) return zero(absolute_precision);
  const long v = *series::padic_valuation(q, 2);
  if (v >= absolute_precision) return zero(absolute_precision);
  Integer num = q.get_num(), den = q.get_den();
  if (v > 0) mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(v));
  if (v < 0) mpz_fdiv_q_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-v));
  const long bits = absolute_precision - v;
  Integer unit = mod_power_of_two(num * inverse_mod_power_of_two(den, static_cast<unsigned long>(bits)), bits);
  return PadicApprox(std::move(unit), v, bits);
}

PadicApprox PadicApprox::truncated(long absolute_bits) const {
  if (absolute_bits >= absolute_precision()) return *this;
  if (is_zero() || absolute_bits <= valuation_) return zero(std::min(absolute_bits, absolute_precision()));
  const long bits = absolute_bits - valuation_;
  return PadicApprox(mod_power_of_two(unit_, bits), valuation_, bits);
}

std::string PadicApprox::digits() const {
  if (is_zero()) return "0 (mod 2^" + std::to_string(valuation_) + ")";
  std::string bits = unit_.get_str(2);
  bits.insert(0, static_cast<std::size_t>(precision_) - bits.size(), '0');
  return "..." + bits + " * 2^" + std::to_string(valuation_);
}

PadicApprox operator+(const PadicApprox& a, const PadicApprox& b) {
  const long absolute = std::min(a.absolute_precision(), b.absolute_precision());
  const long scale = std::min(a.valuation_, b.valuation_);
  const Integer sum = shifted_left(a.unit_, a.valuation_ - scale) + shifted_left(b.unit_, b.valuation_ - scale);
  return PadicApprox::normalized(sum, scale, absolute);
}

PadicApprox operator-(const PadicApprox& a) {
  if (a.is_zero()) return a;
  return PadicApprox::normalized(-a.unit_, a.valuation_, a.absolute_precision());
}

PadicApprox operator-(const PadicApprox& a, const PadicApprox& b) { return a + (-b); }

PadicApprox operator*(const PadicApprox& a, const PadicApprox& b) {
  const long absolute = std::min(a.absolute_precision() + b.valuation_, b.absolute_precision() + a.valuation_);
  if (a.is_zero() || b.is_zero()) return PadicApprox::zero(absolute);
  const long bits = std::min(a.precision_, b.precision_);
  return PadicApprox(mod_power_of_two(a.unit_ * b.unit_, bits), a.valuation_ + b.valuation_, bits);
}

PadicApprox operator/(const PadicApprox& a, const PadicApprox& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "2-adic divisor is zero at its precision");
  if (a.is_zero()) return PadicApprox::zero(a.absolute_precision() - b.valuation_);
  const long bits = std::min(a.precision_, b.precision_);
  const Integer inv = inverse_mod_power_of_two(b.unit_, static_cast<unsigned long>(bits));
  return PadicApprox(mod_power_of_two(a.unit_ * inv, bits), a.valuation_ - b.valuation_, bits);
}

long agreement(const PadicApprox& a, const PadicApprox& b) {
  const PadicApprox d = a - b;
  return d.is_zero() ? d.absolute_precision() : d.valuation();
}

Integer inverse_mod_power_of_two(const Integer& odd, unsigned long bits) {
  if (mpz_even_p(odd.get_mpz_t())) throw Error(ErrorCode::DivisionByZero, "even number has no 2-adic inverse");
  Integer modulus = 1;
  mpz_mul_2exp(modulus.get_mpz_t(), modulus.get_mpz_t(), bits);
  if (bits == 0) return 0;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), odd.get_mpz_t(), modulus.get_mpz_t());
  return inv;
}

}  // namespace holo::padic
