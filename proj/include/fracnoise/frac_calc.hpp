// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gsl/gsl_sf_zeta.h>

#include "fracnoise/core/error.hpp"
#include "fracnoise/core/fft.hpp"
#include "fracnoise/core/quadrature.hpp"
#include "fracnoise/core/sampled_function.hpp"

namespace fracnoise {

// ---------------------------------------------------------------------------
// Right-sided fractional integral and Marchaud derivative on a grid.

namespace detail {

// Cell moments of the right-sided kernel: c_k = h^a ((k+1)^a - k^a) / Gamma(a+1).
inline std::vector<double> cell_moments(double a, double h, std::size_t n) {
  std::vector<double> c(n);
  const double scale = std::pow(h, a) / std::tgamma(a + 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    c[k] = scale * (std::pow(kk + 1.0, a) - std::pow(kk, a));
  }
  return c;
}

}  // namespace detail

// (I^a f)(r) = (1/Gamma(a)) int f(tau) (tau - r)_+^{a-1} dtau, sampled at the
// nodes of a grid that extends `padding` cells left of f's support. Each
// cell of the piecewise-constant input is integrated exactly.
inline SampledFunction fractional_integral(const SampledFunction& f, FracOrder alpha,
                                           std::optional<std::size_t> padding = std::nullopt) {
  require(!f.empty(), "fractional_integral: empty input");
  const std::size_t n = f.size();
  const std::size_t pad = padding.value_or(n);
  const std::size_t len = n + pad;
  const std::vector<double> c = detail::cell_moments(alpha.value(), f.step(), len);
  // g[i'] = sum_j v[j] c[j - i' + pad]
  std::vector<double> g = fft::correlate(f.values(), c, len, pad);
  return {f.step(), f.start() - static_cast<double>(pad) * f.step(), std::move(g)};
}

// Weights d_k of the exact discrete left inverse of fractional_integral:
// sum_m c_m d_{k-m} = delta_k. For 0 < a < 1 one has d_0 > 0, d_k <= 0 for
// k >= 1 and sum_k d_k = 0, so D g_i = sum_{k>=1} (-d_k)(g_i - g_{i+k})
// is the Marchaud difference quotient with the zero-extended tail folded in.
inline std::vector<double> marchaud_weights(double a, double h, std::size_t n) {
  const std::vector<double> c = detail::cell_moments(a, h, n);
  std::vector<double> d(n, 0.0);
  if (n == 0) return d;
  d[0] = 1.0 / c[0];
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t m = 1; m <= k; ++m) s += c[m] * d[k - m];
    d[k] = -s / c[0];
  }
  return d;
}

// Right-sided Marchaud derivative (D^a g)(r) = a/Gamma(1-a) int_0^inf
// [g(r) - g(r+s)] s^{-a-1} ds for node samples g, zero beyond the grid.
inline SampledFunction marchaud_derivative(const SampledFunction& g, FracOrder alpha) {
  const double a = alpha.value();
  require_domain(a < 1.0, "marchaud_derivative: order must lie in (0, 1)");
  require(!g.empty(), "marchaud_derivative: empty input");
  const std::size_t n = g.size();
  const std::vector<double> d = marchaud_weights(a, g.step(), n);
  std::vector<double> out = fft::correlate(g.values(), d, n, 0);
  return {g.step(), g.start(), std::move(out)};
}

// ---------------------------------------------------------------------------
// zeta(a)^2 = int_0^inf ((1+s)^a - s^a)^2 ds + 1/(2a+1)

namespace detail {

// binom(a, k) for real a.
inline std::vector<double> binomial_series(double a, std::size_t terms) {
  std::vector<double> b(terms + 1);
  b[0] = 1.0;
  for (std::size_t k = 1; k <= terms; ++k)
    b[k] = b[k - 1] * (a - static_cast<double>(k - 1)) / static_cast<double>(k);
  return b;
}

}  // namespace detail

inline double zeta_constant(double a) {
  require_domain(std::isfinite(a) && std::abs(a) < 0.5, "zeta_constant: |a| must be below 1/2");
  if (a == 0.0) return 1.0;
  auto sq = [a](double s) {
    const double d = std::pow(1.0 + s, a) - std::pow(s, a);
    return d * d;
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  const double near = ts.integrate(sq, 0.0, 1.0, 1e-14);
  // [1, T] by Gauss-Kronrod in log s; beyond T the binomial expansion
  // s^{2a} (sum_k b_k s^{-k})^2 integrates term by term.
  constexpr double T = 16.0;
  auto in_log = [&](double x) {
    const double s = std::exp(x);
    return sq(s) * s;
  };
  const double mid = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      in_log, 0.0, std::log(T), 15, 1e-14);
  constexpr std::size_t K = 40;
  const std::vector<double> b = detail::binomial_series(a, K);
  double tail = 0.0;
  for (std::size_t k = 1; k <= K; ++k)
    for (std::size_t l = 1; l <= K; ++l) {
      const double p = static_cast<double>(k + l) - 2.0 * a - 1.0;
      tail += b[k] * b[l] * std::pow(T, -p) / p;
    }
  return std::sqrt(near + mid + tail + 1.0 / (2.0 * a + 1.0));
}

// ---------------------------------------------------------------------------
// L2 norms of I^a f (a > 0), D^{-a} f (a < 0) for piecewise-constant f.
//
// With x_j the cell edges and J_j = v_{j-1} - v_j the jumps,
//   (I^a f)(r) = (1/Gamma(1+a)) sum_j J_j (x_j - r)_+^a,
// which also gives the Marchaud derivative of order -a when -1 < a < 0.

namespace detail {

struct StaircaseJumps {
  std::vector<double> jump;  // size n + 1
  double scale = 0.0;        // max |jump|
};

inline StaircaseJumps jumps_of(const SampledFunction& f) {
  const std::size_t n = f.size();
  StaircaseJumps s;
  s.jump.assign(n + 1, 0.0);
  for (std::size_t j = 0; j <= n; ++j) {
    const double left = j == 0 ? 0.0 : f[j - 1];
    const double right = j == n ? 0.0 : f[j];
    s.jump[j] = left - right;
    s.scale = std::max(s.scale, std::abs(s.jump[j]));
  }
  return s;
}

// int_R (sum_j J_j (x_j - r)_+^a)^2 dr, without the 1/Gamma(1+a)^2 factor.
inline NormResult jump_power_l2_squared(const SampledFunction& f, double a) {
  const StaircaseJumps sj = jumps_of(f);
  if (sj.scale == 0.0) return {0.0, true};
  if (a <= -0.5) return NormResult::divergent();
  const std::vector<double>& J = sj.jump;
  const std::size_t n = f.size();
  const double h = f.step();
  const double width = h * static_cast<double>(n);

  // Far field: moments about the centre of the support decide integrability.
  constexpr std::size_t K = 24;
  std::vector<double> mom(K + 1, 0.0);
  const double half = 0.5 * width;
  for (std::size_t j = 0; j <= n; ++j) {
    const double u = h * static_cast<double>(j) - half;
    double p = 1.0;
    for (std::size_t k = 0; k <= K; ++k) {
      mom[k] += J[j] * p;
      p *= u;
    }
  }
  std::size_t k0 = K + 1;
  {
    double ref = 0.0;
    for (double x : J) ref += std::abs(x);
    double pw = half;
    for (std::size_t k = 1; k <= K; ++k, pw *= half) {
      if (std::abs(mom[k]) > 1e-11 * ref * pw) {
        k0 = k;
        break;
      }
    }
  }
  if (2.0 * static_cast<double>(k0) - 2.0 * a - 1.0 <= 0.0) return NormResult::divergent();

  // Near field: cells i = -pad .. n-1, r = x_i + theta h. The term J_{i+1}
  // (h(1-theta))^a is singular at the right cell edge and handled exactly or
  // by Gauss-Jacobi; the rest, S_i(theta) = sum_{k>=2} J_{i+k} (h(k-theta))^a,
  // is analytic on the cell and evaluated for all i at once by FFT.
  const std::size_t pad = std::max<std::size_t>(n, 8);
  const std::size_t cells = n + pad;
  constexpr std::size_t Q = 14;
  const quad::Rule& gl = quad::legendre01(Q);
  const quad::Rule& gj = quad::jacobi01(Q, a, 0.0);
  auto smooth_part = [&](double theta) {
    std::vector<double> ker(cells + 1, 0.0);
    for (std::size_t k = 2; k <= cells; ++k) ker[k] = std::pow(h * (static_cast<double>(k) - theta), a);
    return fft::correlate(J, ker, cells, pad);
  };
  std::vector<double> cross(cells, 0.0), square(cells, 0.0);
  for (std::size_t q = 0; q < Q; ++q) {
    const std::vector<double> s = smooth_part(gj.x[q]);
    for (std::size_t i = 0; i < cells; ++i) cross[i] += gj.w[q] * s[i];
  }
  for (std::size_t q = 0; q < Q; ++q) {
    const std::vector<double> s = smooth_part(gl.x[q]);
    for (std::size_t i = 0; i < cells; ++i) square[i] += gl.w[q] * s[i] * s[i];
  }
  const double ha = std::pow(h, a);
  double total = 0.0;
  for (std::size_t ip = 0; ip < cells; ++ip) {
    const long long i = static_cast<long long>(ip) - static_cast<long long>(pad);
    const long long jn = i + 1;
    const double Jn = (jn >= 0 && jn <= static_cast<long long>(n)) ? J[static_cast<std::size_t>(jn)] : 0.0;
    total += h * (Jn * Jn * ha * ha / (2.0 * a + 1.0) + 2.0 * Jn * ha * cross[ip] + square[ip]);
  }

  // Intermediate field left of the padding: d = x_0 - r in [pad h, 16 width].
  auto direct = [&](double d) {
    double g = 0.0;
    for (std::size_t j = 0; j <= n; ++j) g += J[j] * std::pow(h * static_cast<double>(j) + d, a);
    return g;
  };
  double lo = h * static_cast<double>(pad);
  const double far = 16.0 * width;
  while (lo < far) {
    const double hi = 2.0 * lo;
    total += quad::legendre([&](double d) {
      const double g = direct(d);
      return g * g;
    }, lo, hi, 24);
    lo = hi;
  }

  // Multipole tail: with d' = d + width/2, g = sum_k binom(a,k) m_k d'^{a-k}.
  const std::vector<double> b = detail::binomial_series(a, K);
  const double d0 = lo + half;
  double tail = 0.0;
  for (std::size_t k = k0; k <= K; ++k)
    for (std::size_t l = k0; l <= K; ++l) {
      const double p = static_cast<double>(k + l) - 2.0 * a - 1.0;
      tail += b[k] * b[l] * mom[k] * mom[l] * std::pow(d0, -p) / p;
    }
  total += tail;
  if (!std::isfinite(total)) throw NumericalFailure("fractional L2 norm evaluation overflowed");
  return {std::max(total, 0.0), true};
}

}  // namespace detail

// ||I^a f||^2_{L2(R)} for a > 0, ||D^{-a} f||^2 for a < 0, ||f||^2 at a = 0.
inline NormResult fractional_l2_squared(const SampledFunction& f, double a) {
  if (f.empty()) return {0.0, true};
  if (a == 0.0) return {f.l2_norm_squared(), true};
  NormResult r = detail::jump_power_l2_squared(f, a);
  if (!r.finite) return r;
  const double g = std::tgamma(1.0 + a);
  r.value /= g * g;
  return r;
}

// Homogeneous Bessel potential norm ||f||_{H^sigma} computed in the time
// domain as ||D^sigma f|| (sigma > 0) or ||I^{-sigma} f|| (sigma < 0).
inline NormResult hdot_norm(const SampledFunction& f, double sigma) {
  require_finite(sigma, "sigma");
  NormResult r = fractional_l2_squared(f, -sigma);
  if (r.finite) r.value = std::sqrt(r.value);
  return r;
}

inline double lambda_h_prefactor(HurstParameter H) {
  const double a = H.offset();
  const double g = std::tgamma(H.value() + 0.5);
  const double z = zeta_constant(a);
  return g * g / (z * z);
}

// ||f||_{Lambda_H} = [Gamma^2(H+1/2)/zeta^2(H-1/2)]^{1/2} ||I^{H-1/2} f||_{L2}
// (D^{1/2-H} for H < 1/2; plain L2 at H = 1/2).
inline NormResult lambda_h_norm(const SampledFunction& f, HurstParameter H) {
  if (H.regime() == HurstParameter::Regime::brownian) return {std::sqrt(f.l2_norm_squared()), true};
  NormResult r = fractional_l2_squared(f, H.offset());
  if (r.finite) r.value = std::sqrt(lambda_h_prefactor(H) * r.value);
  return r;
}

// (f|g)_{Lambda_H} by polarisation on a common grid.
inline NormResult lambda_h_inner(const SampledFunction& f, const SampledFunction& g,
                                 HurstParameter H) {
  auto [a, b] = align(f, g);
  std::vector<double> sum(a.size()), diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum[i] = a[i] + b[i];
    diff[i] = a[i] - b[i];
  }
  const NormResult p = lambda_h_norm(SampledFunction(a.step(), a.start(), std::move(sum)), H);
  const NormResult m = lambda_h_norm(SampledFunction(a.step(), a.start(), std::move(diff)), H);
  if (!p.finite || !m.finite) return NormResult::divergent();
  return {0.25 * (p.value * p.value - m.value * m.value), true};
}

// ---------------------------------------------------------------------------
// Spectral route: ||f||^2 = int |Ff(tau)|^2 |tau|^{2 sigma} dtau with the
// unitary transform. For a staircase |Ff|^2 = h^2/(2 pi) sinc^2(tau h/2)
// |P(tau)|^2, P the trigonometric polynomial of the samples. Folding all
// aliases onto u = tau h/2 in [0, pi/2] sums the weights in closed form with
// Hurwitz zeta functions.

inline NormResult hdot_norm_spectral(const SampledFunction& f, double sigma) {
  require_finite(sigma, "sigma");
  if (f.empty() || f.is_zero()) return {0.0, true};
  if (sigma >= 0.5) return NormResult::divergent();
  const std::size_t n = f.size();
  const double h = f.step();
  std::vector<double> rev(f.values().rbegin(), f.values().rend());
  const std::vector<double> ac = fft::convolve(f.values(), rev);
  std::vector<double> R(n);
  for (std::size_t m = 0; m < n; ++m) R[m] = ac[n - 1 + m];

  double mean = 0.0, mag = 0.0;
  for (double v : f.values()) {
    mean += v;
    mag += std::abs(v);
  }
  const bool zero_mean = std::abs(mean) <= 1e-12 * mag;
  if (!zero_mean && sigma <= -0.5) return NormResult::divergent();
  if (zero_mean && sigma <= -1.5) return NormResult::divergent();

  // |P|^2 = R_0 + 2 sum_{m>=1} R_m cos(2 m u), by Clenshaw.
  auto power = [&](double u) {
    const double c = std::cos(2.0 * u);
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t m = n - 1; m >= 1; --m) {
      const double b0 = 2.0 * R[m] + 2.0 * c * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    return R[0] + c * b1 - b2;
  };
  // |P|^2 / u^2 for zero-mean samples: -4 sum R_m m^2 sinc^2(m u).
  auto power_over_u2 = [&](double u) {
    double s = 0.0;
    for (std::size_t m = 1; m < n; ++m) {
      const double x = static_cast<double>(m) * u;
      const double sc = x == 0.0 ? 1.0 : std::sin(x) / x;
      s += R[m] * static_cast<double>(m * m) * sc * sc;
    }
    return -4.0 * s;
  };
  const double s = 2.0 - 2.0 * sigma;
  const double pref = std::pow(2.0 / h, 2.0 * sigma);
  auto aliases = [&](double u) {
    const double q = u / std::numbers::pi;
    return std::pow(std::numbers::pi, -s) * (gsl_sf_hzeta(s, 1.0 + q) + gsl_sf_hzeta(s, 1.0 - q));
  };
  auto sinc2 = [](double u) {
    if (u == 0.0) return 1.0;
    const double x = std::sin(u) / u;
    return x * x;
  };

  const std::size_t panels = std::max<std::size_t>(16, 2 * n);
  const double width = 0.5 * std::numbers::pi / static_cast<double>(panels);
  constexpr std::size_t Q = 12;
  const quad::Rule& gl = quad::legendre01(Q);
  double total = 0.0;
  // First panel: u^{2 sigma} (or u^{2 sigma + 2}) carried by a Jacobi rule.
  {
    const double e = zero_mean ? 2.0 * sigma + 2.0 : 2.0 * sigma;
    const quad::Rule& gj = quad::jacobi01(Q, 0.0, e);
    const double scale = std::pow(width, e + 1.0);
    for (std::size_t q = 0; q < Q; ++q) {
      const double u = width * gj.x[q];
      const double p = zero_mean ? power_over_u2(u) : power(u);
      total += scale * gj.w[q] * p * sinc2(u);
    }
    for (std::size_t q = 0; q < Q; ++q) {
      const double u = width * gl.x[q];
      const double su = std::sin(u);
      total += width * gl.w[q] * power(u) * su * su * aliases(u);
    }
  }
  for (std::size_t p = 1; p < panels; ++p) {
    const double lo = width * static_cast<double>(p);
    for (std::size_t q = 0; q < Q; ++q) {
      const double u = lo + width * gl.x[q];
      const double su = std::sin(u);
      total += width * gl.w[q] * power(u) * su * su * (std::pow(u, -s) + aliases(u));
    }
  }
  total *= pref * 2.0 * h / std::numbers::pi;
  if (!std::isfinite(total)) throw NumericalFailure("spectral norm evaluation overflowed");
  return {std::sqrt(std::max(total, 0.0)), true};
}

// f^<t>(tau) = f(t - tau) for tau <= t, zero otherwise. Only the part of f
// on [0, inf) takes part; a cell edge of f must sit at 0 when f starts left of it.
inline SampledFunction time_reversal_shift(const SampledFunction& f, double t) {
  require(std::isfinite(t) && t >= 0.0, "time_reversal_shift: t must be nonnegative");
  const double h = f.step();
  if (f.empty() || f.support_end() <= 0.0) return {h, t, {}};
  std::size_t first = 0;
  if (f.start() < 0.0) {
    const double k = -f.start() / h;
    require(std::abs(k - std::round(k)) < 1e-9, "time_reversal_shift: no cell edge at 0");
    first = static_cast<std::size_t>(std::llround(k));
  }
  const std::size_t n = f.size() - first;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f[f.size() - 1 - i];
  return {h, t - f.support_end(), std::move(v)};
}

}  // namespace fracnoise
