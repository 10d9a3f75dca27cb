// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracnoise/core/error.hpp"

namespace fracnoise {

// Hurst index in (0, 1).
class HurstParameter {
 public:
  enum class Regime { anti_persistent, brownian, persistent };

  explicit HurstParameter(double h) : h_(h) {
    require(std::isfinite(h) && h > 0.0 && h < 1.0, "Hurst index must lie in (0, 1)");
  }

  double value() const { return h_; }
  // Order of the fractional operator behind the Lambda_H norm.
  double offset() const { return h_ - 0.5; }

  Regime regime() const {
    if (h_ == 0.5) return Regime::brownian;
    return h_ < 0.5 ? Regime::anti_persistent : Regime::persistent;
  }

 private:
  double h_;
};

// Strictly positive fractional order.
class FracOrder {
 public:
  explicit FracOrder(double a) : a_(a) {
    require_domain(std::isfinite(a) && a > 0.0, "fractional order must be positive");
  }
  double value() const { return a_; }

 private:
  double a_;
};

// Piecewise-constant function on a uniform grid. Cell i is
// [start + i*step, start + (i+1)*step) and carries values[i]; the function
// vanishes outside [start, support_end()).
class SampledFunction {
 public:
  SampledFunction() = default;

  SampledFunction(double step, double start, std::vector<double> values)
      : step_(step), start_(start), values_(std::move(values)) {
    require(std::isfinite(step) && step > 0.0, "grid step must be positive and finite");
    require_finite(start, "grid start");
    for (double v : values_) require(std::isfinite(v), "sampled values must be finite");
  }

  // Indicator of [a, b) on a grid of width `step`; b - a must be a multiple of step.
  static SampledFunction indicator(double a, double b, double step) {
    require(b > a, "indicator needs b > a");
    const double cells = (b - a) / step;
    const auto n = static_cast<std::size_t>(std::llround(cells));
    require(n > 0 && std::abs(cells - static_cast<double>(n)) < 1e-9 * std::max(1.0, cells),
            "indicator interval must be a whole number of cells");
    return {step, a, std::vector<double>(n, 1.0)};
  }

  // Cell-midpoint samples of f on [a, a + n*step).
  template <class F>
  static SampledFunction from_midpoints(F&& f, double a, std::size_t n, double step) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(a + (static_cast<double>(i) + 0.5) * step);
    return {step, a, std::move(v)};
  }

  double step() const { return step_; }
  double start() const { return start_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double support_end() const { return start_ + step_ * static_cast<double>(values_.size()); }
  double node(std::size_t i) const { return start_ + step_ * static_cast<double>(i); }

  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double operator()(double x) const {
    if (values_.empty() || x < start_) return 0.0;
    const auto i = static_cast<std::size_t>(std::floor((x - start_) / step_));
    return i < values_.size() ? values_[i] : 0.0;
  }

  double integral() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s * step_;
  }

  double l2_norm_squared() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return s * step_;
  }

  bool is_zero() const {
    for (double v : values_)
      if (v != 0.0) return false;
    return true;
  }

 private:
  double step_ = 1.0;
  double start_ = 0.0;
  std::vector<double> values_;
};

// Re-express f and g on one common grid. Both must share the step and have
// cell edges that coincide.
inline std::pair<SampledFunction, SampledFunction> align(const SampledFunction& f,
                                                         const SampledFunction& g) {
  const double h = f.step();
  require(std::abs(g.step() - h) <= 1e-12 * h, "functions must share a grid step");
  const double shift = (g.start() - f.start()) / h;
  const double k = std::round(shift);
  require(std::abs(shift - k) < 1e-8, "grids are not aligned");
  if (f.empty() || g.empty()) {
    const SampledFunction& ref = f.empty() ? g : f;
    SampledFunction zero(h, ref.start(), std::vector<double>(ref.size(), 0.0));
    return f.empty() ? std::pair{zero, g} : std::pair{f, zero};
  }
  const auto kf = static_cast<long long>(k);
  const long long lo = std::min(0LL, kf);
  const long long hi = std::max(static_cast<long long>(f.size()),
                                kf + static_cast<long long>(g.size()));
  const auto n = static_cast<std::size_t>(hi - lo);
  std::vector<double> a(n, 0.0), b(n, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) a[static_cast<std::size_t>(static_cast<long long>(i) - lo)] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) b[static_cast<std::size_t>(kf + static_cast<long long>(i) - lo)] = g[i];
  const double start = f.start() + static_cast<double>(lo) * h;
  return {SampledFunction(h, start, std::move(a)), SampledFunction(h, start, std::move(b))};
}

}  // namespace fracnoise
