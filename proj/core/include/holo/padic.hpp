#pragma once

#include <string>

#include "holo/series.hpp"

namespace holo::padic {

using series::Integer;
using series::Rational;

/// 2-adic number known modulo 2^(valuation + precision): unit_part * 2^valuation
/// with unit_part odd and reduced mod 2^precision. A value that is zero at the
/// available precision has unit_part 0, precision 0 and valuation equal to the
/// absolute precision.
class PadicApprox {
 public:
  PadicApprox() = default;

  static PadicApprox from_rational(const Rational& q, long absolute_precision);
  static PadicApprox zero(long absolute_precision);

  const Integer& unit_part() const noexcept { return unit_; }
  long valuation() const noexcept { return valuation_; }
  long precision() const noexcept { return precision_; }
  long absolute_precision() const noexcept { return valuation_ + precision_; }
  bool is_zero() const noexcept { return precision_ == 0; }

  /// Same value with the absolute precision lowered to at most bits.
  PadicApprox truncated(long absolute_bits) const;

  /// Binary digits of the unit part, most significant first, with the scale.
  std::string digits() const;

  friend PadicApprox operator+(const PadicApprox& a, const PadicApprox& b);
  friend PadicApprox operator-(const PadicApprox& a, const PadicApprox& b);
  friend PadicApprox operator-(const PadicApprox& a);
  friend PadicApprox operator*(const PadicApprox& a, const PadicApprox& b);
  /// Throws DivisionByZero when b is zero at its precision.
  friend PadicApprox operator/(const PadicApprox& a, const PadicApprox& b);

 private:
  PadicApprox(Integer unit, long valuation, long precision);
  static PadicApprox normalized(Integer value, long scale, long absolute_precision);

  Integer unit_ = 0;
  long valuation_ = 0;
  long precision_ = 0;
};

/// Number of agreeing low 2-adic digits: v_2(a - b), capped by the precisions.
long agreement(const PadicApprox& a, const PadicApprox& b);

/// Residue of an odd integer's inverse modulo 2^bits.
Integer inverse_mod_power_of_two(const Integer& odd, unsigned long bits);

}  // namespace holo::padic
