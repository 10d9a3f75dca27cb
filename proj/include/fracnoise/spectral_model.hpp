// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fracnoise/core/error.hpp"
#include "fracnoise/core/quadrature.hpp"

namespace fracnoise {

// Diagonal model on G = (0, pi): A e_n = mu_n e_n, Q e_n = gamma_n e_n with
// e_n(xi) = sqrt(2/pi) sin(n xi). Mode indices are 1-based in the API.
// Tabulated models may carry mu_n = 0 (an undamped mode).
struct SpectralModel {
  std::vector<double> mu;
  std::vector<double> gamma;
  std::vector<double> eigen_scale;  // optional per-mode factor on e_n
  bool example = false;             // mu_k = k^{2m}, gamma_k = k^{-l}
  int m = 1;
  double l = 2.0;

  static constexpr double domain_length = std::numbers::pi;

  std::size_t modes() const { return mu.size(); }

  static SpectralModel example_family(int m, double l, std::size_t modes) {
    require(m >= 1, "model: m must be a positive integer");
    require(std::isfinite(l) && l > 1.0, "model: l must exceed 1");
    require(modes >= 1, "model: need at least one mode");
    SpectralModel s;
    s.example = true;
    s.m = m;
    s.l = l;
    s.mu.resize(modes);
    s.gamma.resize(modes);
    for (std::size_t k = 1; k <= modes; ++k) {
      const double x = static_cast<double>(k);
      s.mu[k - 1] = std::pow(x, 2.0 * m);
      s.gamma[k - 1] = std::pow(x, -l);
    }
    return s;
  }

  static SpectralModel tabulated(std::vector<double> mu, std::vector<double> gamma) {
    require(!mu.empty() && mu.size() == gamma.size(), "model: mu and gamma must have equal nonzero length");
    for (std::size_t i = 0; i < mu.size(); ++i) {
      require(std::isfinite(mu[i]) && mu[i] >= 0.0, "model: eigenvalues must be nonnegative");
      require(i == 0 || mu[i] >= mu[i - 1], "model: eigenvalues must be nondecreasing");
      require(std::isfinite(gamma[i]) && gamma[i] >= 0.0, "model: weights must be nonnegative");
    }
    SpectralModel s;
    s.mu = std::move(mu);
    s.gamma = std::move(gamma);
    return s;
  }

  SpectralModel truncated(std::size_t modes) const {
    require(modes >= 1 && modes <= this->modes(), "model: truncation outside the mode range");
    SpectralModel s = *this;
    s.mu.resize(modes);
    s.gamma.resize(modes);
    if (!s.eigen_scale.empty()) s.eigen_scale.resize(modes);
    return s;
  }

  SpectralModel with_weights(std::vector<double> g) const {
    require(g.size() == modes(), "model: weight count differs from mode count");
    return tabulated(mu, std::move(g));
  }

  SpectralModel with_eigen_scale(std::vector<double> scale) const {
    require(scale.size() == modes(), "model: scale count differs from mode count");
    SpectralModel s = *this;
    s.eigen_scale = std::move(scale);
    return s;
  }

  double scale_of(std::size_t n) const { return eigen_scale.empty() ? 1.0 : eigen_scale[n - 1]; }

  double eigenfunction(std::size_t n, double xi) const {
    require(n >= 1 && n <= modes(), "model: mode index out of range");
    require_domain(xi >= 0.0 && xi <= domain_length, "model: point outside (0, pi)");
    return scale_of(n) * std::sqrt(2.0 / std::numbers::pi) * std::sin(static_cast<double>(n) * xi);
  }

  double gradient(std::size_t n, double xi) const {
    require(n >= 1 && n <= modes(), "model: mode index out of range");
    require_domain(xi >= 0.0 && xi <= domain_length, "model: point outside (0, pi)");
    const double k = static_cast<double>(n);
    return scale_of(n) * std::sqrt(2.0 / std::numbers::pi) * k * std::cos(k * xi);
  }
};

// max |(e_i | e_j) - delta_ij| over the first `modes` modes, by Gauss-Legendre
// panels fine enough for the highest frequency.
inline double orthonormality_defect(const SpectralModel& model, std::size_t modes) {
  require(modes >= 1 && modes <= model.modes(), "orthonormality: mode count out of range");
  const std::size_t panels = 2 * modes + 4;
  const quad::Rule& r = quad::legendre01(16);
  const double w = SpectralModel::domain_length / static_cast<double>(panels);
  std::vector<double> x, wt;
  for (std::size_t p = 0; p < panels; ++p)
    for (std::size_t q = 0; q < r.x.size(); ++q) {
      x.push_back(w * (static_cast<double>(p) + r.x[q]));
      wt.push_back(w * r.w[q]);
    }
  double worst = 0.0;
  for (std::size_t i = 1; i <= modes; ++i)
    for (std::size_t j = i; j <= modes; ++j) {
      double s = 0.0;
      for (std::size_t q = 0; q < x.size(); ++q) s += wt[q] * model.eigenfunction(i, x[q]) * model.eigenfunction(j, x[q]);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

// ---------------------------------------------------------------------------
// sup |e_n| <= C and sup |e_n'| <= C mu_n^{1/2} with one C for all modes.

struct EigenfunctionBoundReport {
  bool holds = false;
  double constant = 0.0;              // fitted C
  std::vector<double> mode_constants;  // max(sup|e_n|, sup|e_n'| / sqrt(mu_n))
};

inline EigenfunctionBoundReport check_eigenfunction_bound(const SpectralModel& model, const std::vector<double>& xi_grid,
                                            std::size_t modes, double tolerance = 1e-9) {
  require(!xi_grid.empty(), "eigenfunction bound: empty point grid");
  require(modes >= 2 && modes <= model.modes(), "eigenfunction bound: need two or more modes within the model");
  EigenfunctionBoundReport rep;
  rep.mode_constants.resize(modes);
  for (std::size_t n = 1; n <= modes; ++n) {
    double e = 0.0, d = 0.0;
    for (double xi : xi_grid) {
      e = std::max(e, std::abs(model.eigenfunction(n, xi)));
      d = std::max(d, std::abs(model.gradient(n, xi)));
    }
    rep.mode_constants[n - 1] = std::max(e, d / std::sqrt(model.mu[n - 1]));
  }
  const std::size_t half = modes / 2;
  const double lower = *std::max_element(rep.mode_constants.begin(), rep.mode_constants.begin() + static_cast<long>(half));
  const double upper = *std::max_element(rep.mode_constants.begin() + static_cast<long>(half), rep.mode_constants.end());
  rep.constant = std::max(lower, upper) + tolerance;
  // A bounded family stops growing: the upper half may not exceed the lower.
  rep.holds = std::isfinite(rep.constant) && upper <= 1.1 * lower;
  return rep;
}

// ---------------------------------------------------------------------------
// Series sum_n gamma_n mu_n^q.

struct SeriesCondition {
  std::string expression;
  double mu_exponent = 0.0;
  bool convergent = false;
  std::vector<double> partial_sums;
  // Example model: the terms are k^{-p} with p = l - 2 m q.
  bool analytic = false;
  double p_exponent = std::numeric_limits<double>::quiet_NaN();
  bool analytic_convergent = false;
  // Power law fitted to the last decade of terms and integral-test tail bracket.
  double fitted_decay = std::numeric_limits<double>::quiet_NaN();
  double tail_low = 0.0;
  double tail_high = 0.0;
  bool numeric_convergent = false;

  double sum() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
};

namespace detail {

struct TailFit {
  double decay = std::numeric_limits<double>::infinity();  // p in a_n ~ C n^{-p}
  double low = 0.0, high = 0.0;
  bool finite = true;
};

// Least-squares fit of log a_n against log n over n in [N/10, N], then
// int_{N+1}^inf and int_N^inf of C x^{-p} as the tail bracket.
inline TailFit power_law_tail(const std::vector<double>& terms) {
  TailFit f;
  const std::size_t N = terms.size();
  if (N == 0) return f;
  const std::size_t lo = std::max<std::size_t>(1, N / 10);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
  bool any = false;
  for (std::size_t n = lo; n <= N; ++n) {
    const double a = terms[n - 1];
    if (!std::isfinite(a)) {
      f.finite = false;
      f.low = f.high = std::numeric_limits<double>::infinity();
      f.decay = 0.0;
      return f;
    }
    if (a <= 0.0) continue;
    any = true;
    const double x = std::log(static_cast<double>(n)), y = std::log(a);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    cnt += 1;
  }
  if (!any) return f;  // vanishing tail
  if (cnt < 2) {
    f.finite = false;
    f.low = f.high = std::numeric_limits<double>::infinity();
    f.decay = 0.0;
    return f;
  }
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / cnt;
  f.decay = -slope;
  if (f.decay <= 1.0 + 1e-9) {
    f.finite = false;
    f.low = f.high = std::numeric_limits<double>::infinity();
    return f;
  }
  const double C = std::exp(icpt), p = f.decay, n = static_cast<double>(N);
  f.low = C * std::pow(n + 1.0, 1.0 - p) / (p - 1.0);
  f.high = C * std::pow(n, 1.0 - p) / (p - 1.0);
  return f;
}

inline std::vector<double> running_sum(const std::vector<double>& terms) {
  std::vector<double> s(terms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) s[i] = acc += terms[i];
  return s;
}

}  // namespace detail

inline SeriesCondition series_from_terms(std::string expression, double q, const std::vector<double>& terms) {
  SeriesCondition c;
  c.expression = std::move(expression);
  c.mu_exponent = q;
  c.partial_sums = detail::running_sum(terms);
  const detail::TailFit t = detail::power_law_tail(terms);
  c.fitted_decay = t.decay;
  c.tail_low = t.low;
  c.tail_high = t.high;
  c.numeric_convergent = t.finite && std::isfinite(c.sum());
  c.convergent = c.numeric_convergent;
  return c;
}

// sum_{n <= N} gamma_n mu_n^q with the verdict for the full series.
inline SeriesCondition series_condition(const SpectralModel& model, double q, std::size_t modes,
                                        std::string expression = "gamma_n mu_n^q") {
  require(std::isfinite(q), "series: exponent must be finite");
  require(modes >= 1 && modes <= model.modes(), "series: mode count out of range");
  std::vector<double> terms(modes);
  for (std::size_t n = 0; n < modes; ++n) terms[n] = model.gamma[n] == 0.0 ? 0.0 : model.gamma[n] * std::pow(model.mu[n], q);
  SeriesCondition c = series_from_terms(std::move(expression), q, terms);
  if (model.example) {
    c.analytic = true;
    c.p_exponent = model.l - 2.0 * model.m * q;
    c.analytic_convergent = c.p_exponent > 1.0;
    c.convergent = c.analytic_convergent;
  }
  return c;
}

// The three series of the kernel-driven problem: existence sum gamma mu^{-2H/rho},
// time regularity sum gamma mu^{2H(theta-1)/rho}, space regularity sum gamma mu^{theta-2H/rho}.
struct KernelSeriesConditions {
  SeriesCondition existence, time, space;
  double holder_time = 0.0;   // admissible exponents lie below theta H
  double holder_space = 0.0;  // and below theta
};

inline KernelSeriesConditions kernel_series_conditions(const SpectralModel& model, double rho, double H,
                                                       double theta, std::size_t modes) {
  require(std::isfinite(rho) && rho >= 1.0 && rho <= 2.0, "conditions: rho must lie in [1, 2]");
  require(std::isfinite(H) && H > 0.0 && H < 1.0, "conditions: H must lie in (0, 1)");
  require(std::isfinite(theta) && theta > 0.0 && theta < 1.0, "conditions: theta must lie in (0, 1)");
  KernelSeriesConditions k;
  k.existence = series_condition(model, -2.0 * H / rho, modes, "gamma_n mu_n^(-2H/rho)");
  k.time = series_condition(model, 2.0 * H * (theta - 1.0) / rho, modes, "gamma_n mu_n^(2H(theta-1)/rho)");
  k.space = series_condition(model, theta - 2.0 * H / rho, modes, "gamma_n mu_n^(theta-2H/rho)");
  k.holder_time = theta * H;
  k.holder_space = theta;
  return k;
}

// ---------------------------------------------------------------------------
// Closed-form conditions for the Example model mu_k = k^{2m}, gamma_k = k^{-l}
// and the fractional problem r + mu g_alpha * r = g_beta.

struct ExampleCondition {
  bool window = false;      // per-mode norm finite
  bool inequality = false;  // beta above the p-series threshold
  double threshold = 0.0;
  bool numeric = false;     // fitted-tail verdict of the partial sums
  bool holds() const { return window && inequality; }
  bool consistent() const { return numeric == inequality; }
};

struct ExampleConditions {
  ExampleCondition existence, time, space;
};

inline void validate_fractional_parameters(double l, int m, double alpha, double beta, double H, double theta) {
  require(std::isfinite(l) && l > 1.0, "l must exceed 1");
  require(m >= 1, "m must be a positive integer");
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 2.0, "alpha must lie in (0, 2)");
  require(std::isfinite(beta) && beta > 0.0, "beta must be positive");
  require(std::isfinite(H) && H > 0.0 && H < 1.0, "H must lie in (0, 1)");
  require(std::isfinite(theta) && theta >= 0.0 && theta <= 1.0, "theta must lie in [0, 1]");
}

// mu exponents of the three series: sum gamma_n mu_n^{q}.
inline double existence_exponent(double alpha, double beta, double H) { return 2.0 * (1.0 - beta - H) / alpha; }
inline double time_exponent(double alpha, double beta, double H, double theta) {
  return 2.0 * (1.0 - beta + theta - H) / alpha;
}
inline double space_exponent(double alpha, double beta, double H, double theta) {
  return (2.0 * (1.0 - beta - H) + alpha * theta) / alpha;
}

inline ExampleConditions example_conditions(double l, int m, double alpha, double beta, double H,
                                                      double theta, std::size_t modes = 2000) {
  validate_fractional_parameters(l, m, alpha, beta, H, theta);
  const double shift = alpha * (l - 1.0) / (4.0 * m);
  ExampleConditions c;
  const bool base = beta > 1.0 - H && beta < 1.0 - H + alpha;
  c.existence = {base, beta > 1.0 - H - shift, 1.0 - H - shift};
  c.time = {beta > 1.0 - H + theta && beta < 1.0 - H + alpha, beta > 1.0 - H + theta - shift,
            1.0 - H + theta - shift};
  c.space = {base, beta > 1.0 - H + alpha * theta / 2.0 - shift, 1.0 - H + alpha * theta / 2.0 - shift};
  const SpectralModel model = SpectralModel::example_family(m, l, modes);
  c.existence.numeric = series_condition(model, existence_exponent(alpha, beta, H), modes).numeric_convergent;
  c.time.numeric = series_condition(model, time_exponent(alpha, beta, H, theta), modes).numeric_convergent;
  c.space.numeric = series_condition(model, space_exponent(alpha, beta, H, theta), modes).numeric_convergent;
  return c;
}

}  // namespace fracnoise
