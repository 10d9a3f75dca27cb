// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "fracnoise/core/error.hpp"
#include "fracnoise/core/fft.hpp"
#include "fracnoise/core/parallel.hpp"
#include "fracnoise/core/sampled_function.hpp"
#include "fracnoise/fbm.hpp"
#include "fracnoise/frac_calc.hpp"
#include "fracnoise/kernels.hpp"
#include "fracnoise/resolvent.hpp"
#include "fracnoise/spectral_model.hpp"

namespace fracnoise {

// Per-mode scalar dynamics: either s_n + mu_n (B * s_n) = 1 for a kernel b,
// or r_n + mu_n g_alpha * r_n = g_beta.
struct Dynamics {
  enum class Kind { kernel, fractional };
  Kind kind = Kind::kernel;
  KernelSpec kernel;
  double alpha = 1.0;
  double beta = 1.0;

  static Dynamics with_kernel(const KernelSpec& k) { return {Kind::kernel, k, 1.0, 1.0}; }
  static Dynamics fractional(double alpha, double beta) {
    require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0, "dynamics: alpha must lie in (0, 2]");
    require(std::isfinite(beta) && beta > 0.0, "dynamics: beta must be positive");
    if (alpha == 2.0) require(beta > 0.5 && beta < 3.0, "dynamics: alpha = 2 needs beta in (1/2, 3)");
    return {Kind::fractional, KernelSpec{}, alpha, beta};
  }

  bool is_kernel() const { return kind == Kind::kernel; }

  std::string describe() const {
    if (is_kernel()) return "kernel:" + to_string(kernel.family);
    return "fractional";
  }

  // mu exponent of Tr[Q A^{q}] bounding the trace of the covariance.
  double trace_exponent(double H) const {
    if (is_kernel()) return -2.0 * H / rho_closed_form(kernel);
    return 2.0 * (1.0 - beta - H) / alpha;
  }
};

// ---------------------------------------------------------------------------
// s_n (or r_n) sampled at j * step for j = 0..steps, computed once per mode and
// shared read-only by every replicate.

struct ModeTableOptions {
  std::size_t resolvent_cells = 500;
  double resolvent_growth = 0.01;
  unsigned workers = 1;
};

struct ModeTable {
  double step = 0.0;
  std::size_t steps = 0;
  std::vector<std::vector<double>> values;  // values[n-1][j]; j = 0 is never used by the sums

  std::size_t modes() const { return values.size(); }

  // Integrand of the left-point sum for u(t_j): cell i of [0, t_j) carries s(t_j - tau_i).
  SampledFunction integrand(std::size_t n, std::size_t j) const {
    require(j <= steps, "mode table: time index beyond the table");
    if (j == 0) return {step, 0.0, {}};
    const auto& s = values[n - 1];
    const SampledFunction right(step, 0.0, std::vector<double>(s.begin() + 1, s.begin() + 1 + static_cast<long>(j)));
    return time_reversal_shift(right, step * static_cast<double>(j));
  }

  // integrand(n, j + lag) - integrand(n, j) on the cells of [0, t_{j+lag}).
  SampledFunction increment_integrand(std::size_t n, std::size_t j, std::size_t lag) const {
    require(j + lag <= steps, "mode table: time index beyond the table");
    const auto& s = values[n - 1];
    const std::size_t J = j + lag;
    std::vector<double> v(J);
    for (std::size_t i = 0; i < J; ++i) v[i] = s[J - i] - (i < j ? s[j - i] : 0.0);
    return {step, 0.0, std::move(v)};
  }
};

namespace detail {

inline std::vector<double> kernel_mode_samples(const KernelSpec& k, double mu, double step, std::size_t steps,
                                               const ModeTableOptions& o) {
  std::vector<double> out(steps + 1, 1.0);
  if (mu == 0.0) return out;
  const double horizon = step * static_cast<double>(steps);
  const TimeGrid g = resolvent_grid(k, mu, horizon, o.resolvent_cells, 40.0, o.resolvent_growth);
  const ResolventSolution s = solve_scalar_resolvent(k, mu, g);
  for (std::size_t j = 1; j <= steps; ++j) out[j] = s(step * static_cast<double>(j));
  return out;
}

inline std::vector<double> fractional_mode_samples(double alpha, double beta, double mu, double step,
                                                   std::size_t steps) {
  std::vector<double> out(steps + 1, 0.0);
  if (beta == 1.0) out[0] = 1.0;
  for (std::size_t j = 1; j <= steps; ++j) {
    const double t = step * static_cast<double>(j);
    if (mu == 0.0)
      out[j] = std::exp((beta - 1.0) * std::log(t) - std::lgamma(beta));
    else if (alpha == 2.0)
      out[j] = fundamental_alpha2_value(beta, mu, t);
    else
      out[j] = fundamental_closed(alpha, beta, mu, t);
  }
  return out;
}

}  // namespace detail

inline ModeTable mode_table(const SpectralModel& model, const Dynamics& dyn, double step, std::size_t steps,
                            std::size_t modes, const ModeTableOptions& o = {}) {
  require(std::isfinite(step) && step > 0.0, "mode table: step must be positive");
  require(steps >= 1, "mode table: need at least one step");
  require(modes >= 1 && modes <= model.modes(), "mode table: mode count out of range");
  ModeTable t{step, steps, std::vector<std::vector<double>>(modes)};
  parallel_for(modes, o.workers, [&](std::size_t i) {
    const double mu = model.mu[i];
    t.values[i] = dyn.is_kernel() ? detail::kernel_mode_samples(dyn.kernel, mu, step, steps, o)
                                  : detail::fractional_mode_samples(dyn.alpha, dyn.beta, mu, step, steps);
    for (std::size_t j = 1; j <= steps; ++j)
      if (!std::isfinite(t.values[i][j])) throw NumericalFailure("mode table: non-finite resolvent sample");
  });
  return t;
}

inline std::size_t steps_for(double t, double step, const char* what) {
  require(std::isfinite(t) && t >= 0.0, std::string(what) + ": time must be nonnegative");
  const double c = t / step;
  const auto j = static_cast<std::size_t>(std::llround(c));
  require(std::abs(c - static_cast<double>(j)) < 1e-6 * std::max(1.0, c),
          std::string(what) + ": time must be a whole number of grid steps");
  return j;
}

// ---------------------------------------------------------------------------
// E|u(t)|^2 = sum_n gamma_n ||s_n^<t>||^2_{Lambda_H} for the discretised integrand.

struct VarianceReport {
  double value = 0.0;
  std::vector<double> terms;  // gamma_n ||.||^2, the eigenvalues of Q_t
  double tail_low = 0.0;
  double tail_high = 0.0;
};

inline double mode_lambda_squared(const SampledFunction& f, HurstParameter H) {
  if (f.empty()) return 0.0;
  const NormResult r = lambda_h_norm(f, H);
  if (!r.finite || !std::isfinite(r.value)) throw NumericalFailure("Lambda_H norm of a mode integrand is not finite");
  return r.value * r.value;
}

inline VarianceReport variance_from_table(const SpectralModel& model, const ModeTable& table, std::size_t j,
                                          HurstParameter H, unsigned workers = 1) {
  VarianceReport r;
  r.terms.assign(table.modes(), 0.0);
  parallel_for(table.modes(), workers, [&](std::size_t i) {
    if (model.gamma[i] == 0.0 || j == 0) return;
    r.terms[i] = model.gamma[i] * mode_lambda_squared(table.integrand(i + 1, j), H);
  });
  for (double v : r.terms) r.value += v;
  if (r.terms.size() >= 10) {
    const detail::TailFit tail = detail::power_law_tail(r.terms);
    r.tail_low = tail.low;
    r.tail_high = tail.high;
  }
  return r;
}

struct VarianceOptions {
  double step = 1.0 / 128.0;
  double table_horizon = 0.0;  // resolvent table length; 0 means t
  ModeTableOptions table;
};

inline VarianceReport variance_spectral(const SpectralModel& model, const Dynamics& dyn, double t, double H,
                                        std::size_t modes, const VarianceOptions& o = {}) {
  const HurstParameter hurst(H);
  const std::size_t j = steps_for(t, o.step, "variance");
  const std::size_t total = std::max(j, steps_for(std::max(o.table_horizon, t), o.step, "variance"));
  if (j == 0) {
    VarianceReport r;
    r.terms.assign(modes, 0.0);
    return r;
  }
  const ModeTable table = mode_table(model, dyn, o.step, total, modes, o.table);
  return variance_from_table(model, table, j, hurst, o.table.workers);
}

// ---------------------------------------------------------------------------
// Covariance operator Q_t and the bound Tr[Q_t] <= c Tr[Q A^{-2H/rho}].

struct CovarianceReport {
  double t = 0.0;
  std::vector<double> eigenvalues;
  double trace = 0.0;
  double bound = 0.0;  // sum gamma_n mu_n^{q} over the same modes
  double ratio = 0.0;
};

inline double trace_bound_series(const SpectralModel& model, const Dynamics& dyn, double H, std::size_t modes) {
  const double q = dyn.trace_exponent(H);
  double s = 0.0;
  for (std::size_t i = 0; i < modes; ++i)
    if (model.gamma[i] > 0.0) s += model.gamma[i] * std::pow(model.mu[i], q);
  return s;
}

inline CovarianceReport covariance_from_table(const SpectralModel& model, const Dynamics& dyn, const ModeTable& table,
                                              double t, double H, unsigned workers = 1) {
  CovarianceReport c;
  c.t = t;
  const VarianceReport v = variance_from_table(model, table, steps_for(t, table.step, "covariance"), HurstParameter(H), workers);
  c.eigenvalues = v.terms;
  c.trace = v.value;
  c.bound = trace_bound_series(model, dyn, H, table.modes());
  c.ratio = c.bound > 0.0 ? c.trace / c.bound : 0.0;
  return c;
}

inline CovarianceReport covariance_eigenvalues(const SpectralModel& model, const Dynamics& dyn, double t, double H,
                                               std::size_t modes, const VarianceOptions& o = {}) {
  const std::size_t j = std::max<std::size_t>(1, steps_for(t, o.step, "covariance"));
  const ModeTable table = mode_table(model, dyn, o.step, j, modes, o.table);
  return covariance_from_table(model, dyn, table, t, H, o.table.workers);
}

struct TraceBoundReport {
  std::vector<CovarianceReport> points;
  double ratio_min = 0.0, ratio_max = 0.0;
  double variation = 0.0;  // ratio_max / ratio_min
  bool bounded = false;    // variation below 2
};

inline TraceBoundReport check_trace_bound(const SpectralModel& model, const Dynamics& dyn, const std::vector<double>& times,
                                          double H, std::size_t modes, const VarianceOptions& o = {}) {
  require(!times.empty(), "trace bound: no times");
  double t_max = 0.0;
  for (double t : times) {
    require(t > 0.0, "trace bound: times must be positive");
    t_max = std::max(t_max, t);
  }
  const ModeTable table = mode_table(model, dyn, o.step, steps_for(t_max, o.step, "trace bound"), modes, o.table);
  TraceBoundReport r;
  r.ratio_min = std::numeric_limits<double>::infinity();
  for (double t : times) {
    r.points.push_back(covariance_from_table(model, dyn, table, t, H, o.table.workers));
    r.ratio_min = std::min(r.ratio_min, r.points.back().ratio);
    r.ratio_max = std::max(r.ratio_max, r.points.back().ratio);
  }
  r.variation = r.ratio_min > 0.0 ? r.ratio_max / r.ratio_min : std::numeric_limits<double>::infinity();
  r.bounded = std::isfinite(r.variation) && r.variation < 2.0;
  return r;
}

// ---------------------------------------------------------------------------
// Monte Carlo ensemble of modal paths X_n(t_j) = sqrt(gamma_n) sum_{i<j} s_n(t_j - tau_i) dbeta_n(tau_i).

enum class ConvolutionMethod { automatic, direct, fft };

struct SimulationOptions {
  std::size_t stride = 1;  // keep every stride-th grid time
  unsigned workers = 1;
  ConvolutionMethod method = ConvolutionMethod::automatic;
  ModeTableOptions table;
  double max_work = 4e10;     // bound on modes * replicates * steps^2 / stride
  double max_values = 2.5e8;  // bound on stored doubles
};

struct SolutionEnsemble {
  SpectralModel model;
  Dynamics dynamics;
  HurstParameter hurst{0.5};
  double step = 0.0;
  std::size_t steps = 0;
  std::size_t stride = 1;
  std::size_t modes = 0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::shared_ptr<const ModeTable> table;
  std::vector<double> values;  // [(n-1) * replicates + k] * points + q

  std::size_t points() const { return steps / stride + 1; }
  double time(std::size_t q) const { return step * static_cast<double>(q * stride); }
  double horizon() const { return step * static_cast<double>(steps); }
  double X(std::size_t n, std::size_t k, std::size_t q) const {
    return values[((n - 1) * replicates + k) * points() + q];
  }
};

namespace detail {

// X_j = sum_{i<j} s[j-i] d[i] at j = q * stride.
inline void modal_direct(const std::vector<double>& s, const std::vector<double>& d, std::size_t stride,
                         double scale, double* out, std::size_t points) {
  for (std::size_t q = 0; q < points; ++q) {
    const std::size_t j = q * stride;
    double acc = 0.0;
    for (std::size_t i = 0; i < j; ++i) acc += s[j - i] * d[i];
    out[q] = scale * acc;
  }
}

inline void modal_fft(const std::vector<double>& s, const std::vector<double>& d, std::size_t stride, double scale,
                      double* out, std::size_t points) {
  const std::span<const double> kernel(s.data() + 1, s.size() - 1);
  const std::vector<double> c = fft::convolve(d, kernel);
  out[0] = 0.0;
  for (std::size_t q = 1; q < points; ++q) out[q] = scale * c[q * stride - 1];
}

}  // namespace detail

inline SolutionEnsemble simulate_solution(const SpectralModel& model, const Dynamics& dyn, double H, double horizon,
                                          double step, std::size_t modes, std::size_t replicates, std::uint64_t seed,
                                          const SimulationOptions& o = {}) {
  const HurstParameter hurst(H);
  require(modes >= 1 && modes <= model.modes(), "simulate: mode count out of range");
  require(replicates >= 1, "simulate: need at least one replicate");
  require(o.stride >= 1, "simulate: stride must be positive");
  const std::size_t steps = steps_for(horizon, step, "simulate");
  require(steps >= 1, "simulate: horizon must span at least one step");
  require(steps % o.stride == 0, "simulate: stride must divide the number of steps");
  const double n = static_cast<double>(modes), m = static_cast<double>(replicates), s = static_cast<double>(steps);
  const std::size_t points = steps / o.stride + 1;
  require(n * m * static_cast<double>(points) <= o.max_values, "simulate: ensemble exceeds the storage limit");
  require(n * m * s * std::min(s, s * std::log2(s + 1.0) / static_cast<double>(points)) <= o.max_work,
          "simulate: ensemble exceeds the work limit");

  SolutionEnsemble e;
  e.model = model.truncated(modes);
  e.dynamics = dyn;
  e.hurst = hurst;
  e.step = step;
  e.steps = steps;
  e.stride = o.stride;
  e.modes = modes;
  e.replicates = replicates;
  e.seed = seed;
  e.table = std::make_shared<const ModeTable>(mode_table(model, dyn, step, steps, modes, o.table));
  e.values.assign(modes * replicates * points, 0.0);

  bool use_fft = o.method == ConvolutionMethod::fft;
  if (o.method == ConvolutionMethod::automatic) use_fft = points > 16;
  const FgnSampler sampler(hurst, steps, step);
  const SeedSpec spec{seed};
  const ModeTable& table = *e.table;
  parallel_for(modes * replicates, o.workers, [&](std::size_t idx) {
    const std::size_t mode = idx / replicates, k = idx % replicates;
    const double g = model.gamma[mode];
    if (g == 0.0) return;
    Philox4x32 eng = spec.engine(mode, k);
    const std::vector<double> d = sampler.increments(eng);
    double* out = e.values.data() + idx * points;
    if (use_fft)
      detail::modal_fft(table.values[mode], d, o.stride, std::sqrt(g), out, points);
    else
      detail::modal_direct(table.values[mode], d, o.stride, std::sqrt(g), out, points);
  });
  for (double v : e.values)
    if (!std::isfinite(v)) throw NumericalFailure("simulate: non-finite modal value");
  return e;
}

// ---------------------------------------------------------------------------
// Ensemble statistics.

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

inline McEstimate mc_estimate(const std::vector<double>& samples) {
  McEstimate r;
  const double m = static_cast<double>(samples.size());
  if (samples.empty()) return r;
  for (double v : samples) r.mean += v;
  r.mean /= m;
  if (samples.size() < 2) return r;
  double ss = 0.0;
  for (double v : samples) ss += (v - r.mean) * (v - r.mean);
  r.stderr_ = std::sqrt(ss / (m - 1.0) / m);
  return r;
}

// E|u(t_q)|^2 = E sum_n X_n(t_q)^2.
inline McEstimate mc_variance(const SolutionEnsemble& e, std::size_t q) {
  require(q < e.points(), "mc_variance: time index out of range");
  std::vector<double> y(e.replicates, 0.0);
  for (std::size_t k = 0; k < e.replicates; ++k)
    for (std::size_t n = 1; n <= e.modes; ++n) y[k] += e.X(n, k, q) * e.X(n, k, q);
  return mc_estimate(y);
}

inline std::vector<double> mc_mode_means(const SolutionEnsemble& e, std::size_t q) {
  std::vector<double> m(e.modes, 0.0);
  for (std::size_t n = 1; n <= e.modes; ++n) {
    for (std::size_t k = 0; k < e.replicates; ++k) m[n - 1] += e.X(n, k, q);
    m[n - 1] /= static_cast<double>(e.replicates);
  }
  return m;
}

// Largest empirical |corr(X_n, X_m)|, n != m, at time index q.
inline double max_mode_correlation(const SolutionEnsemble& e, std::size_t q) {
  const std::size_t N = e.modes, M = e.replicates;
  std::vector<double> mean = mc_mode_means(e, q), sd(N, 0.0);
  for (std::size_t n = 1; n <= N; ++n) {
    for (std::size_t k = 0; k < M; ++k) sd[n - 1] += std::pow(e.X(n, k, q) - mean[n - 1], 2);
    sd[n - 1] = std::sqrt(sd[n - 1]);
  }
  double worst = 0.0;
  for (std::size_t a = 1; a <= N; ++a)
    for (std::size_t b = a + 1; b <= N; ++b) {
      if (sd[a - 1] == 0.0 || sd[b - 1] == 0.0) continue;
      double c = 0.0;
      for (std::size_t k = 0; k < M; ++k) c += (e.X(a, k, q) - mean[a - 1]) * (e.X(b, k, q) - mean[b - 1]);
      worst = std::max(worst, std::abs(c / (sd[a - 1] * sd[b - 1])));
    }
  return worst;
}

// Exact second moment of the discretised ensemble, sum_n gamma_n ||integrand||^2.
inline double exact_variance(const SolutionEnsemble& e, std::size_t q, unsigned workers = 1) {
  return variance_from_table(e.model, *e.table, q * e.stride, e.hurst, workers).value;
}

// ---------------------------------------------------------------------------
// Field values u(t, xi) = sum_n X_n(t) e_n(xi).

struct FieldSamples {
  std::vector<double> times;
  std::vector<double> xi;
  std::size_t replicates = 0;
  std::vector<double> values;  // [(q * xi.size() + x) * replicates + k]

  double operator()(std::size_t q, std::size_t x, std::size_t k) const {
    return values[(q * xi.size() + x) * replicates + k];
  }
};

inline FieldSamples evaluate_field(const SolutionEnsemble& e, const std::vector<double>& xi_points) {
  FieldSamples f;
  f.xi = xi_points;
  f.replicates = e.replicates;
  for (std::size_t q = 0; q < e.points(); ++q) f.times.push_back(e.time(q));
  std::vector<double> basis(e.modes * xi_points.size());
  for (std::size_t x = 0; x < xi_points.size(); ++x)
    for (std::size_t n = 1; n <= e.modes; ++n) basis[x * e.modes + n - 1] = e.model.eigenfunction(n, xi_points[x]);
  f.values.assign(e.points() * xi_points.size() * e.replicates, 0.0);
  for (std::size_t q = 0; q < e.points(); ++q)
    for (std::size_t x = 0; x < xi_points.size(); ++x)
      for (std::size_t k = 0; k < e.replicates; ++k) {
        double u = 0.0;
        for (std::size_t n = 1; n <= e.modes; ++n) u += e.X(n, k, q) * basis[x * e.modes + n - 1];
        f.values[(q * xi_points.size() + x) * e.replicates + k] = u;
      }
  return f;
}

// s_n(t) (u0)_n: the contribution of the initial value.
inline std::vector<double> deterministic_part(const SpectralModel& model, const KernelSpec& kernel,
                                              const std::vector<double>& u0, double t, std::size_t cells = 2000) {
  require(u0.size() <= model.modes(), "deterministic part: more coefficients than modes");
  require(std::isfinite(t) && t >= 0.0, "deterministic part: t must be nonnegative");
  std::vector<double> out(u0.size(), 0.0);
  for (std::size_t i = 0; i < u0.size(); ++i) {
    if (u0[i] == 0.0) continue;
    if (t == 0.0 || model.mu[i] == 0.0) {
      out[i] = u0[i];
      continue;
    }
    const ResolventSolution s = solve_scalar_resolvent(kernel, model.mu[i], resolvent_grid(kernel, model.mu[i], t, cells));
    out[i] = s.values.back() * u0[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structure functions.

struct StructureRow {
  double lag = 0.0;
  double value = 0.0;
  double stderr_ = 0.0;
  double exact = 0.0;
};

struct StructureFunction {
  std::vector<StructureRow> rows;
  double slope = 0.0;        // weighted log-log fit of the MC values
  double slope_exact = 0.0;  // plain log-log fit of the exact values
  double decades = 0.0;
};

namespace detail {

// Weighted least squares of log v against log x, weights (v / se)^2.
inline double weighted_loglog_slope(const std::vector<double>& x, const std::vector<double>& v,
                                    const std::vector<double>& se) {
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(v[i] > 0.0)) continue;
    const double w = se[i] > 0.0 ? std::pow(v[i] / se[i], 2) : 1.0;
    const double lx = std::log(x[i]), ly = std::log(v[i]);
    sw += w;
    sx += w * lx;
    sy += w * ly;
    sxx += w * lx * lx;
    sxy += w * lx * ly;
  }
  const double den = sw * sxx - sx * sx;
  if (!(den > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return (sw * sxy - sx * sy) / den;
}

}  // namespace detail

struct StructureOptions {
  std::size_t base_times = 32;  // base times used, evenly spread over the window
  bool exact = true;
  unsigned workers = 1;
};

// lags are counted in output points of the ensemble.
inline StructureFunction structure_function_time(const SolutionEnsemble& e, const std::vector<std::size_t>& lags,
                                                 const StructureOptions& o = {}) {
  require(lags.size() >= 2, "structure function: need at least two lags");
  const std::size_t P = e.points();
  const double T = e.horizon();
  std::vector<std::size_t> window;
  for (std::size_t q = 0; q < P; ++q)
    if (e.time(q) >= 0.25 * T - 1e-12 && e.time(q) <= 0.75 * T + 1e-12) window.push_back(q);
  require(!window.empty(), "structure function: empty base-time window");
  std::vector<std::size_t> base;
  const std::size_t B = std::min(o.base_times, window.size());
  for (std::size_t b = 0; b < B; ++b) base.push_back(window[b * window.size() / B]);

  StructureFunction sf;
  std::vector<double> x, v, se;
  for (std::size_t L : lags) {
    require(L * e.stride >= 4, "structure function: lags must span at least 4 grid steps");
    require(base.back() + L < P, "structure function: lag exceeds the simulated horizon");
    std::vector<double> per(e.replicates, 0.0);
    for (std::size_t k = 0; k < e.replicates; ++k) {
      double acc = 0.0;
      for (std::size_t q : base)
        for (std::size_t n = 1; n <= e.modes; ++n) acc += std::pow(e.X(n, k, q + L) - e.X(n, k, q), 2);
      per[k] = acc / static_cast<double>(base.size());
    }
    const McEstimate est = mc_estimate(per);
    StructureRow row{e.step * static_cast<double>(L * e.stride), est.mean, est.stderr_, 0.0};
    if (o.exact) {
      std::vector<double> terms(base.size() * e.modes, 0.0);
      parallel_for(terms.size(), o.workers, [&](std::size_t idx) {
        const std::size_t b = idx / e.modes, n = idx % e.modes + 1;
        if (e.model.gamma[n - 1] == 0.0) return;
        terms[idx] = e.model.gamma[n - 1] *
                     mode_lambda_squared(e.table->increment_integrand(n, base[b] * e.stride, L * e.stride), e.hurst);
      });
      for (double t : terms) row.exact += t;
      row.exact /= static_cast<double>(base.size());
    }
    sf.rows.push_back(row);
    x.push_back(row.lag);
    v.push_back(row.value);
    se.push_back(row.stderr_);
  }
  sf.slope = detail::weighted_loglog_slope(x, v, se);
  if (o.exact) {
    std::vector<double> ex;
    for (const auto& r : sf.rows) ex.push_back(r.exact);
    sf.slope_exact = detail::weighted_loglog_slope(x, ex, std::vector<double>(x.size(), 0.0));
  }
  sf.decades = std::log10(x.back() / x.front());
  return sf;
}

struct XiPair {
  double xi = 0.0;
  double eta = 0.0;
};

// E|u(t_q, xi) - u(t_q, eta)|^2 against |xi - eta|.
inline StructureFunction structure_function_space(const SolutionEnsemble& e, const std::vector<XiPair>& pairs,
                                                  std::size_t q, double min_separation = 0.0,
                                                  unsigned workers = 1) {
  require(!pairs.empty(), "structure function: no point pairs");
  require(q < e.points(), "structure function: time index out of range");
  std::vector<double> var(e.modes, 0.0);
  parallel_for(e.modes, workers, [&](std::size_t i) {
    if (e.model.gamma[i] != 0.0)
      var[i] = e.model.gamma[i] * mode_lambda_squared(e.table->integrand(i + 1, q * e.stride), e.hurst);
  });
  StructureFunction sf;
  std::vector<double> x, v, se;
  for (const auto& p : pairs) {
    const double d = std::abs(p.xi - p.eta);
    require(d == 0.0 || d >= min_separation, "structure function: separation below the grid guard");
    std::vector<double> de(e.modes);
    for (std::size_t n = 1; n <= e.modes; ++n) de[n - 1] = e.model.eigenfunction(n, p.xi) - e.model.eigenfunction(n, p.eta);
    std::vector<double> per(e.replicates, 0.0);
    for (std::size_t k = 0; k < e.replicates; ++k) {
      double u = 0.0;
      for (std::size_t n = 1; n <= e.modes; ++n) u += e.X(n, k, q) * de[n - 1];
      per[k] = u * u;
    }
    const McEstimate est = mc_estimate(per);
    StructureRow row{d, est.mean, est.stderr_, 0.0};
    for (std::size_t n = 0; n < e.modes; ++n) row.exact += var[n] * de[n] * de[n];
    sf.rows.push_back(row);
    if (d > 0.0) {
      x.push_back(d);
      v.push_back(row.value);
      se.push_back(row.stderr_);
    }
  }
  if (x.size() >= 2) {
    sf.slope = detail::weighted_loglog_slope(x, v, se);
    std::vector<double> ex;
    for (const auto& r : sf.rows)
      if (r.lag > 0.0) ex.push_back(r.exact);
    sf.slope_exact = detail::weighted_loglog_slope(x, ex, std::vector<double>(x.size(), 0.0));
    sf.decades = std::log10(*std::max_element(x.begin(), x.end()) / *std::min_element(x.begin(), x.end()));
  }
  return sf;
}

// ---------------------------------------------------------------------------
// sigma_1 = sum gamma ||r_n||^2_{H^{1/2-H}},
// sigma_2 = sum gamma (||r_n||_{H^{1/2-H}} + ||r_n||_{H^{theta+1/2-H}})^2,
// sigma_3 = sum gamma mu^theta ||r_n||^2_{H^{1/2-H}}.

struct SigmaSeries {
  std::vector<double> partial_sums;
  double mu_exponent = 0.0;  // power of mu in the per-mode bound
  double tail_low = 0.0, tail_high = 0.0;
  bool convergent = false;
  double sum() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
};

struct SigmaReport {
  SigmaSeries sigma1, sigma2, sigma3;
};

namespace detail {

inline SigmaSeries sigma_from_terms(const std::vector<double>& terms, double q) {
  SigmaSeries s;
  s.mu_exponent = q;
  s.partial_sums = running_sum(terms);
  for (double t : terms)
    if (!std::isfinite(t)) {
      s.tail_low = s.tail_high = std::numeric_limits<double>::infinity();
      return s;
    }
  const TailFit f = power_law_tail(terms);
  s.tail_low = f.low;
  s.tail_high = f.high;
  s.convergent = f.finite;
  return s;
}

}  // namespace detail

inline SigmaReport sigma_conditions(const SpectralModel& model, double alpha, double beta, double H, double theta,
                                    std::size_t modes) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 2.0, "sigma: alpha must lie in (0, 2)");
  require(std::isfinite(beta) && beta > 0.0, "sigma: beta must be positive");
  require(std::isfinite(theta) && theta >= 0.0 && theta <= 1.0, "sigma: theta must lie in [0, 1]");
  require(modes >= 1 && modes <= model.modes(), "sigma: mode count out of range");
  const HurstParameter hurst(H);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> a(modes), b(modes), t1(modes), t2(modes), t3(modes);
  for (std::size_t i = 0; i < modes; ++i) {
    const double g = model.gamma[i], mu = model.mu[i];
    const NormResult n0 = mu > 0.0 ? rn_hdot_norm(alpha, beta, mu, hurst.value(), 0.0) : NormResult::divergent();
    const NormResult nt = mu > 0.0 ? rn_hdot_norm(alpha, beta, mu, hurst.value(), theta) : NormResult::divergent();
    const double x = n0.finite ? n0.value : inf, y = nt.finite ? nt.value : inf;
    a[i] = g == 0.0 ? 0.0 : g * x * x;
    b[i] = g == 0.0 ? 0.0 : g * y * y;
    t1[i] = a[i];
    t2[i] = g == 0.0 ? 0.0 : g * (x + y) * (x + y);
    t3[i] = g == 0.0 ? 0.0 : g * std::pow(mu, theta) * x * x;
  }
  SigmaReport r;
  r.sigma1 = detail::sigma_from_terms(t1, existence_exponent(alpha, beta, hurst.value()));
  r.sigma3 = detail::sigma_from_terms(t3, space_exponent(alpha, beta, hurst.value(), theta));
  // (x + y)^2 lies between x^2 + y^2 and 2 (x^2 + y^2): sigma_2 converges iff both parts do.
  const SigmaSeries pa = detail::sigma_from_terms(a, existence_exponent(alpha, beta, hurst.value()));
  const SigmaSeries pb = detail::sigma_from_terms(b, time_exponent(alpha, beta, hurst.value(), theta));
  r.sigma2.partial_sums = detail::running_sum(t2);
  r.sigma2.mu_exponent = std::max(pa.mu_exponent, pb.mu_exponent);
  r.sigma2.convergent = pa.convergent && pb.convergent;
  r.sigma2.tail_low = pa.tail_low + pb.tail_low;
  r.sigma2.tail_high = 2.0 * (pa.tail_high + pb.tail_high);
  return r;
}

// ---------------------------------------------------------------------------
// alpha = 2, H > 1/2: |r_n| <= c_T mu_n^{(1-beta)/2} on (0, T), so the squared
// norms in sigma_1 are summable when sum gamma_n mu_n^{1-beta} converges. The
// displayed form sum gamma_n mu_n^{(1-beta)/2} is reported alongside. Neither is
// the alpha -> 2 limit of the existence condition for alpha < 2.

struct Alpha2Report {
  bool convergent = false;
  SeriesCondition series;          // sum gamma mu^{1-beta}
  bool displayed_convergent = false;
  SeriesCondition displayed;       // sum gamma mu^{(1-beta)/2}
  std::string note;
};

inline Alpha2Report alpha2_local_condition(const SpectralModel& model, double beta, std::size_t modes) {
  require(std::isfinite(beta) && beta > 0.5 && beta < 3.0, "alpha = 2 condition needs beta in (1/2, 3)");
  Alpha2Report r;
  r.series = series_condition(model, 1.0 - beta, modes, "gamma_n mu_n^(1-beta)");
  r.displayed = series_condition(model, 0.5 * (1.0 - beta), modes, "gamma_n mu_n^((1-beta)/2)");
  r.convergent = r.series.convergent;
  r.displayed_convergent = r.displayed.convergent;
  r.note = "local existence on bounded time intervals only; not the alpha -> 2 limit of the alpha < 2 existence condition";
  return r;
}

}  // namespace fracnoise
