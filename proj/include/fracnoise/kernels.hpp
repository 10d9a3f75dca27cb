// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fracnoise/core/error.hpp"

namespace fracnoise {

enum class KernelFamily { exponential, tempered, riemann_liouville };

inline std::string to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::exponential: return "exponential";
    case KernelFamily::tempered: return "tempered";
    case KernelFamily::riemann_liouville: return "riemann-liouville";
  }
  return "?";
}

// b(t) from one of the closed-form families, optionally time-scaled to b(c t).
//   exponential:        e^{-eta t}
//   tempered:           t^{alpha-1} e^{-eta t} / Gamma(alpha)
//   riemann-liouville:  g_alpha(t) = t^{alpha-1} / Gamma(alpha)
struct KernelSpec {
  KernelFamily family = KernelFamily::exponential;
  double alpha = 1.0;
  double eta = 1.0;
  double scale = 1.0;

  static KernelSpec exponential(double eta) { return validated({KernelFamily::exponential, 1.0, eta, 1.0}); }
  static KernelSpec tempered(double alpha, double eta) {
    return validated({KernelFamily::tempered, alpha, eta, 1.0});
  }
  static KernelSpec riemann_liouville(double kappa) {
    return validated({KernelFamily::riemann_liouville, kappa, 0.0, 1.0});
  }

  KernelSpec scaled(double c) const {
    KernelSpec k = *this;
    k.scale = scale * c;
    return validated(k);
  }

  static KernelSpec validated(KernelSpec k) {
    require(std::isfinite(k.alpha) && k.alpha > 0.0, "kernel order must be positive");
    require(std::isfinite(k.eta) && k.eta >= 0.0, "kernel eta must be nonnegative");
    require(std::isfinite(k.scale) && k.scale > 0.0, "kernel time scale must be positive");
    return k;
  }

  // Power-law exponent alpha of the small-t singularity t^{alpha-1}.
  double order() const { return family == KernelFamily::exponential ? 1.0 : alpha; }
  double decay() const { return family == KernelFamily::riemann_liouville ? 0.0 : eta; }
  bool integrable() const { return decay() > 0.0; }
};

namespace detail {

// Unscaled kernel b(t), t > 0.
inline double kernel_value(const KernelSpec& k, double t) {
  const double a = k.order(), eta = k.decay();
  if (k.family == KernelFamily::exponential) return std::exp(-eta * t);
  return std::exp((a - 1.0) * std::log(t) - eta * t - std::lgamma(a));
}

// d^n/dt^n of t^{a-1} e^{-eta t} / Gamma(a) by Leibniz.
inline double kernel_derivative_unscaled(const KernelSpec& k, double t, int n) {
  const double a = k.order(), eta = k.decay();
  if (k.family == KernelFamily::exponential) return std::pow(-eta, n) * std::exp(-eta * t);
  double sum = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= n; ++j) {
    // falling factorial (a-1)(a-2)...(a-j) times t^{a-1-j}
    double ff = 1.0;
    for (int i = 1; i <= j; ++i) ff *= (a - static_cast<double>(i));
    sum += binom * ff * std::pow(t, a - 1.0 - j) * std::pow(-eta, n - j);
    binom = binom * static_cast<double>(n - j) / static_cast<double>(j + 1);
  }
  return sum * std::exp(-eta * t - std::lgamma(a));
}

// B_m(t) = int_0^t (t - s)^m / m! b(s) ds for m = 0, 1, 2 (unscaled).
inline double kernel_primitive_unscaled(const KernelSpec& k, double t, int m) {
  if (t <= 0.0) return 0.0;
  const double a = k.order(), eta = k.decay();
  if (k.family == KernelFamily::exponential) {
    const double x = eta * t;
    if (x < 0.05) {
      // sum_j (-eta)^j t^{j+m+1} / (j+m+1)!
      double term = std::pow(t, m + 1) / std::tgamma(m + 2.0), s = 0.0;
      for (int j = 0; j < 30; ++j) {
        s += term;
        term *= -x / static_cast<double>(j + m + 2);
      }
      return s;
    }
    const double b0 = -std::expm1(-x) / eta;
    if (m == 0) return b0;
    const double b1 = (t - b0) / eta;
    if (m == 1) return b1;
    return (0.5 * t * t - b1) / eta;
  }
  if (eta == 0.0) return std::exp((a + m) * std::log(t) - std::lgamma(a + m + 1.0));
  // Moments M_j = int_0^t s^j b(s) ds = Gamma(a+j)/Gamma(a) eta^{-a-j} P(a+j, eta t).
  auto moment = [&](int j) {
    return std::exp(std::lgamma(a + j) - std::lgamma(a) - (a + j) * std::log(eta)) *
           boost::math::gamma_p(a + j, eta * t);
  };
  const double m0 = moment(0);
  if (m == 0) return m0;
  const double m1 = moment(1);
  if (m == 1) return t * m0 - m1;
  return 0.5 * (t * t * m0 - 2.0 * t * m1 + moment(2));
}

}  // namespace detail

inline double evaluate_kernel(const KernelSpec& k, double t) {
  require_domain(t > 0.0, "kernel evaluation needs t > 0");
  return detail::kernel_value(k, k.scale * t);
}

inline double kernel_derivative(const KernelSpec& k, double t, int order) {
  require_domain(t > 0.0, "kernel evaluation needs t > 0");
  require(order >= 1 && order <= 3, "derivative order must be 1, 2 or 3");
  return std::pow(k.scale, order) * detail::kernel_derivative_unscaled(k, k.scale * t, order);
}

// B_m(t) = int_0^t (t-s)^m/m! b(s) ds, m in {0, 1, 2}; zero for t <= 0.
inline double kernel_primitive(const KernelSpec& k, double t, int m) {
  require(m >= 0 && m <= 2, "primitive order must be 0, 1 or 2");
  if (t <= 0.0) return 0.0;
  return detail::kernel_primitive_unscaled(k, k.scale * t, m) / std::pow(k.scale, m + 1);
}

// ---------------------------------------------------------------------------
// Laplace transforms

inline std::complex<double> laplace_transform(const KernelSpec& k, std::complex<double> lambda) {
  require_domain(lambda.real() > 0.0, "Laplace transform needs Re lambda > 0");
  const std::complex<double> l = lambda / k.scale;
  std::complex<double> v;
  switch (k.family) {
    case KernelFamily::exponential: v = 1.0 / (k.eta + l); break;
    case KernelFamily::tempered: v = std::pow(k.eta + l, -k.alpha); break;
    case KernelFamily::riemann_liouville: v = std::pow(l, -k.alpha); break;
  }
  return v / k.scale;
}

// Direct quadrature of int_0^inf b(t) e^{-lambda t} dt.
inline std::complex<double> laplace_transform_numeric(const KernelSpec& k, std::complex<double> lambda) {
  require_domain(lambda.real() > 0.0, "Laplace transform needs Re lambda > 0");
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  auto part = [&](bool imag) {
    auto f = [&](double t) {
      if (t <= 0.0) return 0.0;
      const std::complex<double> e = std::exp(-lambda * t);
      return evaluate_kernel(k, t) * (imag ? e.imag() : e.real());
    };
    return ts.integrate(f, 0.0, 1.0, 1e-13) + es.integrate(f, 1.0, std::numeric_limits<double>::infinity(), 1e-13);
  };
  return {part(false), part(true)};
}

// ---------------------------------------------------------------------------
// Parabolicity index rho = 1 + (2/pi) sup |arg b^(lambda)| over Re lambda > 0.

struct RhoReport {
  double value = 1.0;        // numerical boundary scan
  double closed_form = 1.0;  // family shortcut
  double arg_sup_at = 0.0;   // y at which the scan attained its maximum
  bool parabolic = true;     // rho < 2
};

inline double rho_closed_form(const KernelSpec& k) {
  return k.family == KernelFamily::exponential ? 2.0 : 1.0 + k.alpha;
}

inline RhoReport rho(const KernelSpec& k) {
  require(k.family == KernelFamily::exponential || k.alpha <= 1.0,
          "rho: kernel order above 1 is outside the 3-monotone class");
  auto arg_at = [&](double y) {
    const std::complex<double> lam(1e-8 * y, y);
    return std::abs(std::arg(laplace_transform(k, lam)));
  };
  constexpr int points = 4001;
  const double lo = -8.0, hi = 12.0;
  double best = -1.0, best_x = lo;
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double v = arg_at(std::pow(10.0, x));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  // golden-section refinement around the best sample
  const double dx = (hi - lo) / (points - 1);
  double a = std::max(lo, best_x - dx), b = std::min(hi, best_x + dx);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (arg_at(std::pow(10.0, c)) > arg_at(std::pow(10.0, d)))
      b = d;
    else
      a = c;
  }
  const double xr = 0.5 * (a + b);
  const double vr = arg_at(std::pow(10.0, xr));
  if (vr > best) {
    best = vr;
    best_x = xr;
  }
  RhoReport r;
  r.value = std::clamp(1.0 + 2.0 / std::numbers::pi * best, 1.0, 2.0);
  r.closed_form = rho_closed_form(k);
  r.arg_sup_at = std::pow(10.0, best_x);
  r.parabolic = r.closed_form < 2.0;
  return r;
}

// ---------------------------------------------------------------------------
// Kernel conditions

struct MonotoneReport {
  bool passed = true;
  std::vector<double> violations;  // grid points where some condition failed
  std::vector<std::string> reasons;
};

// b and -b' nonnegative, nonincreasing and convex on the grid, with b and
// its derivative supplied as callables.
template <class B, class DB>
MonotoneReport check_three_monotone(B&& b, DB&& db, const std::vector<double>& grid) {
  require(!grid.empty(), "check_three_monotone: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(grid[i] > 0.0, "check_three_monotone: grid must be positive");
    if (i > 0) require(grid[i] > grid[i - 1], "check_three_monotone: grid must be increasing");
  }
  MonotoneReport rep;
  auto flag = [&](double t, const std::string& why) {
    rep.passed = false;
    rep.violations.push_back(t);
    rep.reasons.push_back(why);
  };
  std::vector<double> f(grid.size()), g(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    f[i] = b(grid[i]);
    g[i] = -db(grid[i]);
  }
  auto check = [&](const std::vector<double>& v, const std::string& name) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    const double tol = 1e-12 * std::max(scale, 1e-300);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < -tol) flag(grid[i], name + " negative");
      if (i > 0 && v[i] > v[i - 1] + tol) flag(grid[i], name + " increasing");
      if (i > 0 && i + 1 < v.size()) {
        const double s0 = (v[i] - v[i - 1]) / (grid[i] - grid[i - 1]);
        const double s1 = (v[i + 1] - v[i]) / (grid[i + 1] - grid[i]);
        const double slope_scale = std::max(std::abs(s0), std::abs(s1));
        if (s1 < s0 - 1e-9 * slope_scale - tol / (grid[i + 1] - grid[i - 1])) flag(grid[i], name + " not convex");
      }
    }
  };
  check(f, "b");
  check(g, "-b'");
  return rep;
}

inline MonotoneReport check_three_monotone(const KernelSpec& k, const std::vector<double>& grid) {
  return check_three_monotone([&](double t) { return evaluate_kernel(k, t); },
                              [&](double t) { return kernel_derivative(k, t, 1); }, grid);
}

struct ParabolicityReport {
  std::vector<double> t;
  std::vector<double> ratio;
  double limit = 0.0;  // last ratio
  bool finite = false;
};

// Ratio [(1/t) int_0^t s b(s) ds] / [int_0^t -s b'(s) ds] along t -> 0. The
// denominator equals B_0(t) - t b(t) after integrating by parts.
inline ParabolicityReport check_parabolicity_limit(const KernelSpec& k, const std::vector<double>& t_values) {
  require(t_values.size() >= 4, "check_parabolicity_limit: need at least four t values");
  ParabolicityReport rep;
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    const double t = t_values[i];
    require(t > 0.0 && (i == 0 || t < t_values[i - 1]), "t values must be positive and decreasing");
    const double b0 = kernel_primitive(k, t, 0), b1 = kernel_primitive(k, t, 1);
    const double num = (t * b0 - b1) / t;  // int_0^t s b(s) ds = t B_0 - B_1
    const double den = b0 - t * evaluate_kernel(k, t);
    if (!(den > 0.0) || !std::isfinite(den)) throw NumericalFailure("parabolicity ratio: denominator underflow");
    rep.t.push_back(t);
    rep.ratio.push_back(num / den);
  }
  rep.limit = rep.ratio.back();
  const std::size_t n = rep.ratio.size();
  double lo = rep.ratio[n - 4], hi = lo;
  for (std::size_t i = n - 4; i < n; ++i) {
    lo = std::min(lo, rep.ratio[i]);
    hi = std::max(hi, rep.ratio[i]);
  }
  rep.finite = std::isfinite(hi) && hi <= 1.05 * lo;
  return rep;
}

// Dyadic sequence t = 2^{-j}, j = 4..20.
inline std::vector<double> dyadic_t_values() {
  std::vector<double> t;
  for (int j = 4; j <= 20; ++j) t.push_back(std::ldexp(1.0, -j));
  return t;
}

}  // namespace fracnoise
