#pragma once

#include <complex>
#include <cstddef>

#include "holo/series.hpp"

namespace holo::hauptmodul {

/// x(q) = q prod_{n>=1} (1 + q^n)^24 as an exact series.
series::ExactSeries x_of_q_series(std::size_t order);
/// Compositional inverse q(x) of x_of_q_series.
series::ExactSeries q_of_x_series(std::size_t order);

/// log x(q) for 0 < |q| < 1 (imaginary part defined modulo 2 pi). Uses the
/// product directly for |q| <= 0.9 and Delta(2 tau)/Delta(tau) with modular
/// reduction otherwise. DOMAIN_ERROR for |q| >= 1.
std::complex<double> log_x_of_q(std::complex<double> q);
/// x(q); x(0) = 0.
std::complex<double> x_of_q(std::complex<double> q);

/// Solves x(q) = a near q = 0 by Newton's method, for small |a|.
std::complex<double> q_of_x(std::complex<double> a);

}  // namespace holo::hauptmodul
