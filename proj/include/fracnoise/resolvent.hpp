// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracnoise/core/error.hpp"
#include "fracnoise/core/parallel.hpp"
#include "fracnoise/core/sampled_function.hpp"
#include "fracnoise/kernels.hpp"
#include "fracnoise/mittag_leffler.hpp"
#include "fracnoise/volterra.hpp"

namespace fracnoise {

namespace detail {

// Piecewise-linear interpolation through (t, v); zero left of t[0] and
// constant right of the last node.
inline double interpolate(const std::vector<double>& t, const std::vector<double>& v, double x) {
  if (x < t.front()) return 0.0;
  if (x >= t.back()) return v.back();
  const auto it = std::upper_bound(t.begin(), t.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - t.begin()) - 1;
  const double w = (x - t[j]) / (t[j + 1] - t[j]);
  return v[j] + w * (v[j + 1] - v[j]);
}

// int |v| over [t[lo], t[hi]] for the linear interpolant.
inline double abs_integral(const std::vector<double>& t, const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t j = lo; j < hi; ++j) {
    const double a = v[j], b = v[j + 1], h = t[j + 1] - t[j];
    if (a * b >= 0.0)
      s += 0.5 * h * (std::abs(a) + std::abs(b));
    else
      s += 0.5 * h * (a * a + b * b) / (std::abs(a) + std::abs(b));
  }
  return s;
}

inline double rl_kernel(double order, double t) {
  return t <= 0.0 ? 0.0 : std::exp((order - 1.0) * std::log(t) - std::lgamma(order));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scalar resolvent: s' + mu (b * s) = 0, s(0) = 1, solved in the integrated
// form s + mu (B * s) = 1 with B(t) = int_0^t b.

struct ResolventSolution {
  double mu = 0.0;
  KernelSpec kernel;
  TimeGrid grid;
  int order = 2;
  std::vector<double> values;  // s at grid.nodes

  double step() const { return grid.step; }
  double horizon() const { return grid.horizon(); }

  // Piecewise-linear s(t); zero for t < 0.
  double operator()(double t) const { return detail::interpolate(grid.nodes, values, t); }

  // Cell k of [0, horizon) carries s(t_k) (uniform grids only).
  SampledFunction samples() const {
    require(grid.is_uniform(), "samples() needs a uniform grid");
    return {grid.step, 0.0, std::vector<double>(values.begin(), values.end() - 1)};
  }

  // Cell k of [0, cells * step) carries s((k+1) step); reflected with
  // time_reversal_shift this is the integrand of the left-point sum
  // sum_i s(t - tau_i) (beta(tau_{i+1}) - beta(tau_i)).
  SampledFunction right_staircase(std::size_t cells) const {
    require(cells < values.size() && cells <= grid.uniform_cells, "staircase extends beyond the uniform grid");
    return {grid.step, 0.0, std::vector<double>(values.begin() + 1, values.begin() + 1 + static_cast<long>(cells))};
  }
};

inline ResolventSolution solve_scalar_resolvent(const KernelSpec& k, double mu, const TimeGrid& grid) {
  require(std::isfinite(mu) && mu > 0.0, "resolvent: mu must be positive");
  require(grid.cells() >= 1, "resolvent: empty grid");
  auto K = [&](double v) { return kernel_primitive(k, v, 0); };
  auto prim = [&](double v) { return std::pair{kernel_primitive(k, v, 1), kernel_primitive(k, v, 2)}; };
  ResolventSolution r{mu, k, grid, 2, {}};
  r.values = solve_volterra(grid, K, prim, mu, std::vector<double>(grid.nodes.size(), 1.0));
  return r;
}

inline ResolventSolution solve_scalar_resolvent(const KernelSpec& k, double mu, double step, double horizon) {
  require(std::isfinite(step) && step > 0.0, "resolvent: step must be positive");
  require(std::isfinite(horizon) && horizon > 0.0, "resolvent: horizon must be positive");
  return solve_scalar_resolvent(k, mu, TimeGrid::uniform(step, horizon));
}

// Grid resolving the oscillation scale mu^{-1/rho} with `cells` uniform cells
// over `scales` of it, then geometric growth up to the horizon.
inline TimeGrid resolvent_grid(const KernelSpec& k, double mu, double horizon, std::size_t cells = 2000,
                               double scales = 40.0, double growth = 0.01) {
  const double tau = std::pow(mu, -1.0 / rho_closed_form(k)) / k.scale;
  const double fine = std::min(horizon, scales * tau);
  return TimeGrid::graded(fine / static_cast<double>(cells), cells, horizon, growth);
}

// ---------------------------------------------------------------------------
// Fundamental solution: r + mu g_alpha * r = g_beta, r = t^{beta-1} E_{alpha,beta}(-mu t^alpha).

inline double fundamental_closed(double alpha, double beta, double mu, double t) {
  require_domain(t > 0.0, "fundamental solution needs t > 0");
  return std::pow(t, beta - 1.0) * mittag_leffler(alpha, beta, -mu * std::pow(t, alpha));
}

struct FundamentalSolution {
  double alpha = 1.0, beta = 1.0, mu = 1.0;
  double step = 0.0;
  std::vector<double> t;          // t_k = (k+1) step
  std::vector<double> closed;     // Mittag-Leffler route
  std::vector<double> secondary;  // Volterra route (series route for alpha = 2)

  // Cell k of [0, horizon) carries r((k+1) step).
  SampledFunction samples() const { return {step, 0.0, closed}; }

  double max_discrepancy(double from = 0.0) const {
    double m = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= from - 1e-12) m = std::max(m, std::abs(closed[i] - secondary[i]));
    return m;
  }
};

// Volterra route alone. The leading terms sum_{k<K} (-mu)^k g_{alpha k + beta}
// are split off so that the remainder solves an equation with a C^1 forcing.
inline std::vector<double> fundamental_volterra(double alpha, double beta, double mu, const TimeGrid& grid) {
  int K = 0;
  while (alpha * K + beta < 2.0) ++K;
  const double forcing_order = alpha * K + beta;
  const double c = std::pow(-mu, K);
  std::vector<double> F(grid.nodes.size());
  for (std::size_t i = 0; i < F.size(); ++i) F[i] = c * detail::rl_kernel(forcing_order, grid.nodes[i]);
  auto Kv = [&](double v) { return detail::rl_kernel(alpha, v); };
  auto prim = [&](double v) { return std::pair{detail::rl_kernel(alpha + 1.0, v), detail::rl_kernel(alpha + 2.0, v)}; };
  std::vector<double> w = solve_volterra(grid, Kv, prim, mu, F);
  for (std::size_t i = 1; i < w.size(); ++i) {
    double lead = 0.0, ck = 1.0;
    for (int k = 0; k < K; ++k, ck *= -mu) lead += ck * detail::rl_kernel(alpha * k + beta, grid.nodes[i]);
    w[i] += lead;
  }
  return w;
}

inline FundamentalSolution fundamental_solution(double alpha, double beta, double mu, double step, double horizon) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 2.0, "fundamental: alpha must lie in (0, 2)");
  require(std::isfinite(beta) && beta > 0.0, "fundamental: beta must be positive");
  require(std::isfinite(mu) && mu > 0.0, "fundamental: mu must be positive");
  const TimeGrid grid = TimeGrid::uniform(step, horizon);
  FundamentalSolution f{alpha, beta, mu, step, {}, {}, {}};
  const std::vector<double> w = fundamental_volterra(alpha, beta, mu, grid);
  const std::size_t n = grid.cells();
  f.t.resize(n);
  f.closed.resize(n);
  f.secondary.assign(w.begin() + 1, w.end());
  for (std::size_t i = 0; i < n; ++i) {
    f.t[i] = grid.nodes[i + 1];
    f.closed[i] = fundamental_closed(alpha, beta, mu, f.t[i]);
  }
  return f;
}

// alpha = 2: r = mu^{(1-beta)/2} [sin(sqrt(mu) t + (2-beta) pi/2)
//              - sin((2-beta) pi)/pi int_0^inf e^{-sqrt(mu) t s} s^{2-beta}/(1+s^2) ds].
inline double fundamental_alpha2_value(double beta, double mu, double t) {
  using std::numbers::pi;
  require(beta > 0.5 && beta < 3.0, "alpha = 2 formula needs beta in (1/2, 3)");
  require(mu > 0.0, "mu must be positive");
  require_domain(t > 0.0, "alpha = 2 formula needs t > 0");
  const double rm = std::sqrt(mu);
  double v = std::sin(rm * t + (2.0 - beta) * pi / 2.0);
  const double sb = std::sin((2.0 - beta) * pi);
  if (std::abs(sb) > 1e-15) {
    auto f = [&](double s) { return s <= 0.0 ? 0.0 : std::exp(-rm * t * s) * std::pow(s, 2.0 - beta) / (1.0 + s * s); };
    boost::math::quadrature::tanh_sinh<double> ts;
    boost::math::quadrature::exp_sinh<double> es;
    const double I = ts.integrate(f, 0.0, 1.0, 1e-14) + es.integrate(f, 1.0, std::numeric_limits<double>::infinity(), 1e-14);
    v -= sb / pi * I;
  }
  return std::pow(mu, (1.0 - beta) / 2.0) * v;
}

inline FundamentalSolution fundamental_solution_alpha2(double beta, double mu, double step, double horizon) {
  require(std::isfinite(beta) && beta > 0.5 && beta < 3.0, "alpha = 2 formula needs beta in (1/2, 3)");
  require(std::isfinite(mu) && mu > 0.0, "fundamental: mu must be positive");
  const TimeGrid grid = TimeGrid::uniform(step, horizon);
  const std::size_t n = grid.cells();
  FundamentalSolution f{2.0, beta, mu, step, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    f.t[i] = grid.nodes[i + 1];
    f.closed[i] = fundamental_alpha2_value(beta, mu, f.t[i]);
    f.secondary[i] = fundamental_closed(2.0, beta, mu, f.t[i]);
  }
  return f;
}

// ---------------------------------------------------------------------------
// ||r||_{H^sigma}^2 with sigma = theta + 1/2 - H, from the symbol
// r^(i rho) = (i rho)^{alpha-beta} / ((i rho)^alpha + mu):
//   (1/pi) int_0^inf |r^(i rho)|^2 rho^{2 sigma} d rho
//   = mu^{2(1-beta+theta-H)/alpha} / (pi alpha) int_0^inf v^{s-1} / (v^2 + 2 v cos(pi alpha/2) + 1) dv,
// s = (2 alpha - 2 beta + 2 sigma + 1) / alpha, finite iff 0 < s < 2.
inline double rn_hdot_exponent(double alpha, double beta, double H, double theta) {
  return 2.0 * (1.0 - beta + theta - H) / alpha;
}

inline NormResult rn_hdot_norm(double alpha, double beta, double mu, double H, double theta) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 2.0, "rn_hdot_norm: alpha must lie in (0, 2)");
  require(std::isfinite(beta) && beta > 0.0, "rn_hdot_norm: beta must be positive");
  require(std::isfinite(mu) && mu > 0.0, "rn_hdot_norm: mu must be positive");
  require(std::isfinite(theta) && theta >= 0.0, "rn_hdot_norm: theta must be nonnegative");
  const HurstParameter hurst(H);
  const double sigma = theta + 0.5 - hurst.value();
  const double s = (2.0 * alpha - 2.0 * beta + 2.0 * sigma + 1.0) / alpha;
  if (!(s > 0.0 && s < 2.0)) return NormResult::divergent();
  const double c = std::cos(std::numbers::pi * alpha / 2.0);
  // Split at v = 1, map [1, inf) onto (0, 1] by v -> 1/v, and integrate the
  // endpoint power exactly: int_0^1 w^{p-1} g(w) = 1/p + int_0^1 w^{p-1} (g(w) - 1).
  auto piece = [&](double p) {
    auto f = [&](double w) {
      if (w <= 0.0) return 0.0;
      return std::pow(w, p - 1.0) * -(w + 2.0 * c) * w / (w * w + 2.0 * c * w + 1.0);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    return 1.0 / p + ts.integrate(f, 0.0, 1.0, 1e-13);
  };
  const double I = piece(s) + piece(2.0 - s);
  const double sq = std::pow(mu, rn_hdot_exponent(alpha, beta, H, theta)) * I / (std::numbers::pi * alpha);
  if (!std::isfinite(sq)) throw NumericalFailure("rn_hdot_norm quadrature failed");
  return {std::sqrt(sq), true};
}

// ---------------------------------------------------------------------------
// Empirical checks of the resolvent bounds.

struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
};

inline LogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "log-log fit needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, "log-log fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

struct ScalingRow {
  double mu = 0.0;
  double sup_abs = 0.0;   // sup |s|
  double dot_l1 = 0.0;    // ||s'||_1
  double t_dot_l1 = 0.0;  // ||t s'||_1
  double l1 = 0.0;        // ||s||_1 including the tail estimate
  double tail_fraction = 0.0;
  bool tail_flag = false;
};

struct ScalingReport {
  double rho = 1.0;
  std::vector<ScalingRow> rows;  // sorted by mu
  double slope_dot = 0.0, slope_t_dot = 0.0, slope_l1 = 0.0;
  double bound = 0.0;      // max sup |s|
  double ratio_sup = 0.0;  // max ||s||_1 mu^{1/rho}
  bool sup_ok = false, dot_bounded = false, t_dot_ok = false, l1_ok = false;
  bool grid_stable = false;
  double slope_tolerance = 0.05;

  bool pass() const { return sup_ok && dot_bounded && t_dot_ok && l1_ok && grid_stable; }
};

struct ScalingOptions {
  std::size_t cells = 2000;
  double scales = 40.0;
  double growth = 0.01;
  double slope_tolerance = 0.05;
  unsigned workers = 1;
};

namespace detail {

inline ScalingRow scaling_row(const KernelSpec& k, double mu, double horizon, const ScalingOptions& o) {
  ScalingRow row;
  row.mu = mu;
  if (mu == 0.0) {
    row.sup_abs = 1.0;
    row.l1 = horizon;
    row.tail_fraction = 1.0;
    row.tail_flag = true;
    return row;
  }
  const auto sol = solve_scalar_resolvent(k, mu, resolvent_grid(k, mu, horizon, o.cells, o.scales, o.growth));
  const auto& t = sol.grid.nodes;
  const auto& v = sol.values;
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    const double d = std::abs(v[j + 1] - v[j]);
    row.dot_l1 += d;
    row.t_dot_l1 += d * 0.5 * (t[j] + t[j + 1]);
  }
  for (double x : v) row.sup_abs = std::max(row.sup_abs, std::abs(x));
  // Tail beyond the horizon from the decay rate across the two half decades
  // of the last decade, continued geometrically.
  const double T = t.back();
  const auto idx = [&](double x) {
    return static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), x) - t.begin());
  };
  const std::size_t i1 = idx(T / std::sqrt(10.0)), i2 = idx(T / 10.0);
  const double body = abs_integral(t, v, 0, t.size() - 1);
  const double last = abs_integral(t, v, i1, t.size() - 1);
  const double prev = abs_integral(t, v, i2, i1);
  double tail = 0.0;
  if (last > 0.0) {
    const double q = prev > 0.0 ? last / prev : std::numeric_limits<double>::infinity();
    tail = q < 1.0 ? last * q / (1.0 - q) : std::numeric_limits<double>::infinity();
  }
  row.l1 = body + (std::isfinite(tail) ? tail : 0.0);
  row.tail_fraction = std::isfinite(tail) ? tail / row.l1 : 1.0;
  row.tail_flag = row.tail_fraction > 0.01;
  return row;
}

inline std::vector<ScalingRow> scaling_rows(const KernelSpec& k, const std::vector<double>& mus, double horizon,
                                            const ScalingOptions& o) {
  std::vector<ScalingRow> rows(mus.size());
  parallel_for(mus.size(), o.workers, [&](std::size_t i) { rows[i] = scaling_row(k, mus[i], horizon, o); });
  return rows;
}

}  // namespace detail

inline ScalingReport verify_resolvent_scaling(const KernelSpec& k, std::vector<double> mus, double horizon,
                                    const ScalingOptions& opt = {}) {
  require(!mus.empty(), "verify_resolvent_scaling needs at least one mu");
  require(std::isfinite(horizon) && horizon > 0.0, "verify_resolvent_scaling: horizon must be positive");
  for (double m : mus) require(std::isfinite(m) && m >= 0.0, "verify_resolvent_scaling: mu must be nonnegative");
  std::sort(mus.begin(), mus.end());
  ScalingReport rep;
  rep.rho = rho_closed_form(k);
  rep.slope_tolerance = opt.slope_tolerance;
  rep.rows = detail::scaling_rows(k, mus, horizon, opt);

  std::vector<double> m, dot, t_dot, l1;
  for (const auto& r : rep.rows) {
    rep.bound = std::max(rep.bound, r.sup_abs);
    if (r.mu <= 0.0) continue;
    m.push_back(r.mu);
    dot.push_back(r.dot_l1);
    t_dot.push_back(r.t_dot_l1);
    l1.push_back(r.l1);
    rep.ratio_sup = std::max(rep.ratio_sup, r.l1 * std::pow(r.mu, 1.0 / rep.rho));
  }
  rep.sup_ok = rep.bound <= 1.0 + 1e-6;
  const double target = -1.0 / rep.rho;
  if (m.size() >= 2) {
    rep.slope_dot = fit_loglog(m, dot).slope;
    rep.slope_t_dot = fit_loglog(m, t_dot).slope;
    rep.slope_l1 = fit_loglog(m, l1).slope;
    rep.dot_bounded = rep.slope_dot <= opt.slope_tolerance;
    rep.t_dot_ok = std::abs(rep.slope_t_dot - target) <= opt.slope_tolerance * std::abs(target);
    rep.l1_ok = std::abs(rep.slope_l1 - target) <= opt.slope_tolerance * std::abs(target);
  }
  // Rerun on a grid with half the resolution; L1 norms must agree to 1e-3.
  ScalingOptions coarse = opt;
  coarse.cells = opt.cells / 2;
  coarse.growth = opt.growth * 2.0;
  const auto rows2 = detail::scaling_rows(k, mus, horizon, coarse);
  rep.grid_stable = true;
  for (std::size_t i = 0; i < rows2.size(); ++i)
    if (rep.rows[i].mu > 0.0 && std::abs(rows2[i].l1 - rep.rows[i].l1) > 1e-3 * rep.rows[i].l1) rep.grid_stable = false;
  return rep;
}

struct IncrementPair {
  double x = 0.0, t = 0.0, mu = 1.0;
};

struct IncrementReport {
  double rho = 1.0;
  double theta = 0.5, kappa = 1.5;
  std::vector<IncrementPair> pairs;
  std::vector<double> ratio_first, ratio_second;  // normalized by mu^{(1-theta)/rho} |t-x|^{-theta}
  double ratio_sup = 0.0;          // over both integrals
  double ratio_sup_refined = 0.0;  // same on the refined grid
  bool bounded = false, grid_stable = false;

  bool pass() const { return bounded && grid_stable; }
};

namespace detail {

// int_0^d |s|^kappa and int_0^inf |s(u + d) - s(u)|^kappa for each lag d.
inline std::pair<double, double> increment_integrals(const ResolventSolution& s, double d, double kappa) {
  if (d <= 0.0) return {0.0, 0.0};
  const auto& t = s.grid.nodes;
  auto pw = [&](double x) { return std::pow(std::abs(x), kappa); };
  double first = 0.0;
  for (std::size_t j = 0; j + 1 < t.size() && t[j] < d; ++j) {
    const double b = std::min(t[j + 1], d);
    // Two-point Gauss on each piece keeps |s|^kappa accurate near sign changes.
    const double h = b - t[j], m = 0.5 * (t[j] + b), r = 0.5 * h / std::sqrt(3.0);
    first += 0.5 * h * (pw(s(m - r)) + pw(s(m + r)));
  }
  double second = 0.0;
  for (std::size_t j = 0; j + 1 < t.size() && t[j + 1] + d <= t.back(); ++j) {
    const double h = t[j + 1] - t[j], m = 0.5 * (t[j] + t[j + 1]), r = 0.5 * h / std::sqrt(3.0);
    second += 0.5 * h * (pw(s(m - r + d) - s(m - r)) + pw(s(m + r + d) - s(m + r)));
  }
  return {first, second};
}

}  // namespace detail

inline IncrementReport verify_resolvent_increments(const KernelSpec& k, double theta, double kappa, std::vector<IncrementPair> pairs,
                                    double horizon, const ScalingOptions& opt = {}) {
  require(theta > 0.0 && theta < 1.0, "verify_resolvent_increments: theta must lie in (0, 1)");
  require(kappa > 1.0 && kappa < 2.0, "verify_resolvent_increments: kappa must lie in (1, 2)");
  for (const auto& p : pairs) {
    require(p.x > 0.0 && p.t >= p.x && p.t <= horizon, "verify_resolvent_increments: need 0 < x <= t <= horizon");
    require(p.mu > 0.0, "verify_resolvent_increments: mu must be positive");
  }
  IncrementReport rep;
  rep.rho = rho_closed_form(k);
  rep.theta = theta;
  rep.kappa = kappa;
  rep.pairs = pairs;

  std::vector<double> mus;
  for (const auto& p : pairs) mus.push_back(p.mu);
  std::sort(mus.begin(), mus.end());
  mus.erase(std::unique(mus.begin(), mus.end()), mus.end());

  auto run = [&](const ScalingOptions& o, std::vector<double>& r1, std::vector<double>& r2) {
    std::vector<ResolventSolution> sols(mus.size());
    parallel_for(mus.size(), o.workers, [&](std::size_t i) {
      sols[i] = solve_scalar_resolvent(k, mus[i], resolvent_grid(k, mus[i], horizon, o.cells, o.scales, o.growth));
    });
    r1.assign(pairs.size(), 0.0);
    r2.assign(pairs.size(), 0.0);
    double sup = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& p = pairs[i];
      const double d = p.t - p.x;
      if (d <= 0.0) continue;
      const std::size_t m = static_cast<std::size_t>(std::lower_bound(mus.begin(), mus.end(), p.mu) - mus.begin());
      const auto [a, b] = detail::increment_integrals(sols[m], d, kappa);
      const double norm = std::pow(p.mu, (1.0 - theta) / rep.rho) * std::pow(d, -theta);
      r1[i] = a * norm;
      r2[i] = b * norm;
      sup = std::max({sup, r1[i], r2[i]});
    }
    return sup;
  };
  rep.ratio_sup = run(opt, rep.ratio_first, rep.ratio_second);
  ScalingOptions fine = opt;
  fine.cells = opt.cells * 2;
  fine.growth = opt.growth / 2.0;
  std::vector<double> f1, f2;
  rep.ratio_sup_refined = run(fine, f1, f2);
  rep.bounded = std::isfinite(rep.ratio_sup);
  rep.grid_stable = std::abs(rep.ratio_sup_refined - rep.ratio_sup) <= 0.05 * rep.ratio_sup;
  return rep;
}

// Random (x, t, mu) triples with log-uniform lags, mu drawn from `mus`.
inline std::vector<IncrementPair> random_increment_pairs(std::size_t count, double t_max, const std::vector<double>& mus,
                                                     std::uint64_t seed) {
  require(!mus.empty(), "need at least one mu");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<IncrementPair> out(count);
  for (auto& p : out) {
    p.x = t_max * (0.05 + 0.45 * u(gen));
    const double d = std::pow(10.0, -3.0 + 3.0 * u(gen)) * (t_max - p.x);
    p.t = p.x + d;
    p.mu = mus[static_cast<std::size_t>(u(gen) * static_cast<double>(mus.size())) % mus.size()];
  }
  return out;
}

}  // namespace fracnoise
