// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "fracnoise/core/error.hpp"

namespace fracnoise {

namespace detail {

struct SeriesSum {
  double value = 0.0;
  double max_term = 0.0;
  bool converged = false;
};

// Power series of E_{a,b}(-x); max_term measures cancellation.
inline SeriesSum ml_series(double a, double b, double x) {
  SeriesSum s;
  if (x == 0.0) {
    s.value = 1.0 / std::tgamma(b);
    s.max_term = std::abs(s.value);
    s.converged = true;
    return s;
  }
  const double lx = std::log(x);
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 5000; ++k) {
    const double arg = a * k + b;
    const double mag = std::exp(k * lx - std::lgamma(arg));
    const double sign = (k % 2 == 0 ? 1.0 : -1.0) * (std::tgamma(arg) < 0.0 ? -1.0 : 1.0);
    const double term = sign * mag;
    s.value += term;
    s.max_term = std::max(s.max_term, mag);
    if (!std::isfinite(s.max_term)) return s;
    if (k > 2 && mag < prev && mag <= 1e-18 * std::max(std::abs(s.value), 1e-300)) {
      s.converged = true;
      return s;
    }
    prev = mag;
  }
  return s;
}

// Hankel-contour form for 0 < a <= 2, a != 1, b < 1 + a, x > 0:
// branch-cut integral along the negative axis plus the residues of the
// pair of poles s^a = -x that lie on the principal sheet when a > 1.
inline double ml_contour(double a, double b, double x) {
  using std::numbers::pi;
  const double sb = std::sin(pi * b), sab = std::sin(pi * (a - b)), ca = std::cos(pi * a);
  auto f = [&](double r) {
    if (r <= 0.0) return 0.0;
    const double ra = std::pow(r, a);
    const double den = ra * ra + 2.0 * x * ra * ca + x * x;
    return std::exp(-r) * std::pow(r, a - b) * (ra * sb - x * sab) / (pi * den);
  };
  double cut = 0.0;
  if (sb != 0.0 || sab != 0.0) {
    const double r0 = std::pow(x, 1.0 / a);
    const double split = r0 < 60.0 ? r0 : 1.0;
    boost::math::quadrature::tanh_sinh<double> ts(15);
    boost::math::quadrature::exp_sinh<double> es(12);
    double err = 0.0;
    cut = ts.integrate(f, 0.0, split, 1e-14, &err);
    cut += es.integrate(f, split, std::numeric_limits<double>::infinity(), 1e-14, &err);
  }
  double res = 0.0;
  if (a > 1.0) {
    const std::complex<double> s = std::polar(std::pow(x, 1.0 / a), pi / a);
    res = (2.0 / a) * std::real(std::pow(s, 1.0 - b) * std::exp(s));
  }
  return cut + res;
}

}  // namespace detail

// E_{a,b}(z) for real z <= 0.
inline double mittag_leffler(double a, double b, double z) {
  require_domain(std::isfinite(a) && a > 0.0, "Mittag-Leffler: a must be positive");
  require_domain(std::isfinite(b) && b > 0.0, "Mittag-Leffler: b must be positive");
  require_domain(std::isfinite(z) && z <= 0.0, "Mittag-Leffler: argument must be real and nonpositive");
  const double x = -z;
  if (x == 0.0) return 1.0 / std::tgamma(b);
  if (a == 1.0) return boost::math::hypergeometric_1F1(1.0, b, z) / std::tgamma(b);

  if (x <= 10.0) {
    const auto s = detail::ml_series(a, b, x);
    if (s.converged && s.max_term <= 1e2) return s.value;
  }
  if (a > 2.0) {
    const auto s = detail::ml_series(a, b, x);
    if (s.converged && s.max_term <= 1e6 * std::max(std::abs(s.value), 1e-300)) return s.value;
    throw NumericalFailure("Mittag-Leffler: series ill-conditioned and a > 2 has no contour route");
  }
  if (b >= 1.0 + a) {
    const double c = b - a;
    return (1.0 / std::tgamma(c) - mittag_leffler(a, c, z)) / x;
  }
  const double v = detail::ml_contour(a, b, x);
  if (!std::isfinite(v)) throw NumericalFailure("Mittag-Leffler: contour quadrature failed");
  return v;
}

}  // namespace fracnoise
