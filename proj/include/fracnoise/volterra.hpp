// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "fracnoise/core/error.hpp"
#include "fracnoise/core/quadrature.hpp"

namespace fracnoise {

// Time nodes 0 = t_0 < t_1 < ...; the first `uniform_cells` cells have width
// `step`, later cells may grow geometrically.
struct TimeGrid {
  std::vector<double> nodes;
  std::size_t uniform_cells = 0;
  double step = 0.0;

  std::size_t cells() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  double horizon() const { return nodes.empty() ? 0.0 : nodes.back(); }
  bool is_uniform() const { return uniform_cells == cells(); }

  static TimeGrid uniform(double step, double horizon) {
    require(std::isfinite(step) && step > 0.0, "grid step must be positive");
    require(std::isfinite(horizon) && horizon > 0.0, "horizon must be positive");
    const double c = horizon / step;
    const auto n = static_cast<std::size_t>(std::llround(c));
    require(n >= 1 && std::abs(c - static_cast<double>(n)) < 1e-6 * std::max(1.0, c),
            "horizon must be a whole number of grid steps");
    TimeGrid g;
    g.step = step;
    g.uniform_cells = n;
    g.nodes.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g.nodes[i] = step * static_cast<double>(i);
    return g;
  }

  // `uniform_cells` cells of width `step`, then cells of width growth * t.
  static TimeGrid graded(double step, std::size_t uniform_cells, double horizon, double growth) {
    require(std::isfinite(step) && step > 0.0, "grid step must be positive");
    require(uniform_cells >= 1, "graded grid needs a uniform part");
    require(growth > 0.0 && growth < 1.0, "growth factor must lie in (0, 1)");
    TimeGrid g;
    g.step = step;
    g.nodes.reserve(uniform_cells + 1);
    for (std::size_t i = 0; i <= uniform_cells; ++i) {
      const double t = step * static_cast<double>(i);
      if (i > 0 && t > horizon * (1.0 + 1e-12)) break;
      g.nodes.push_back(t);
    }
    g.uniform_cells = g.nodes.size() - 1;
    double t = g.nodes.back();
    while (t < horizon * (1.0 - 1e-12)) {
      const double h = std::max(step, growth * t);
      t = (t + h > horizon * (1.0 - 0.25 * growth)) ? horizon : t + h;
      g.nodes.push_back(t);
    }
    return g;
  }
};

namespace detail {

// Product-integration weights for a cell [u, u + h] of the lag variable,
// (1/h) int K(v)(v - u) dv and (1/h) int K(v)(u + h - v) dv.
template <class Kernel, class Primitives>
std::pair<double, double> cell_weights(const Kernel& K, const Primitives& prim, double u, double h) {
  if (u >= 16.0 * h) {
    static const quad::Rule& r = quad::legendre01(4);
    double p = 0.0, q = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const double k = r.w[i] * K(u + h * r.x[i]);
      p += k * r.x[i];
      q += k * (1.0 - r.x[i]);
    }
    return {p * h, q * h};
  }
  const auto [k1a, k2a] = prim(u);
  const auto [k1b, k2b] = prim(u + h);
  const double p = k1b - (k2b - k2a) / h;
  return {p, k1b - k1a - p};
}

}  // namespace detail

// Solves x(t) + mu int_0^t K(t - s) x(s) ds = F(t) on the nodes of `grid`.
// K(v) evaluates the kernel for v > 0; prim(v) returns {int_0^v K, int_0^v int_0^w K}.
// On uniform cells x is piecewise linear (second order). Graded cells hold x
// constant at the right node: the linear rule has a parasitic root of modulus
// about 1 + order when mu * int_0^h K >> 1, the constant one stays stable.
template <class Kernel, class Primitives>
std::vector<double> solve_volterra(const TimeGrid& grid, const Kernel& K, const Primitives& prim, double mu,
                                   const std::vector<double>& forcing) {
  const std::size_t n = grid.cells();
  require(forcing.size() == n + 1, "forcing must have one value per node");
  const auto& t = grid.nodes;
  const std::size_t U = grid.uniform_cells;
  const double h = grid.step;

  // Toeplitz weights for the uniform part: lag cell m is [m h, (m+1) h].
  std::vector<double> P(U), Q(U);
  for (std::size_t m = 0; m < U; ++m) std::tie(P[m], Q[m]) = detail::cell_weights(K, prim, h * static_cast<double>(m), h);

  std::vector<double> x(n + 1, 0.0);
  x[0] = forcing[0];
  for (std::size_t i = 1; i <= n; ++i) {
    double acc = 0.0, diag = 0.0;
    if (i <= U) {
      for (std::size_t j = 0; j + 1 < i; ++j) acc += P[i - 1 - j] * x[j] + Q[i - 1 - j] * x[j + 1];
      acc += P[0] * x[i - 1];
      diag = Q[0];
    } else {
      for (std::size_t j = 0; j < i; ++j) {
        const double hj = t[j + 1] - t[j];
        double p, q;
        if (j < U) {
          std::tie(p, q) = detail::cell_weights(K, prim, t[i] - t[j + 1], hj);
        } else {
          p = 0.0;
          q = prim(t[i] - t[j]).first - prim(t[i] - t[j + 1]).first;
        }
        acc += p * x[j];
        if (j + 1 < i)
          acc += q * x[j + 1];
        else
          diag = q;
      }
    }
    x[i] = (forcing[i] - mu * acc) / (1.0 + mu * diag);
    if (!std::isfinite(x[i])) throw NumericalFailure("Volterra solve produced a non-finite value");
  }
  return x;
}

}  // namespace fracnoise
