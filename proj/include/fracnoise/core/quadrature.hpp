// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fracnoise/core/error.hpp"

namespace fracnoise::quad {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

namespace detail {

// Golub-Welsch for the Jacobi weight (1-x)^a (1+x)^b on [-1, 1].
inline Rule golub_welsch_jacobi(std::size_t n, double a, double b) {
  require(n > 0, "quadrature order must be positive");
  require_domain(a > -1.0 && b > -1.0, "Jacobi exponents must exceed -1");
  Eigen::VectorXd diag(static_cast<Eigen::Index>(n));
  Eigen::VectorXd off(static_cast<Eigen::Index>(n > 1 ? n - 1 : 1));
  const double ab = a + b;
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    diag[static_cast<Eigen::Index>(k)] =
        k == 0 ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    double b2;
    if (k == 1)
      b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      b2 = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
    off[static_cast<Eigen::Index>(k - 1)] = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  if (n == 1) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = diag[0];
    es.compute(m);
  } else {
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    r.x[i] = es.eigenvalues()[ii];
    const double v0 = es.eigenvectors()(0, ii);
    r.w[i] = mu0 * v0 * v0;
  }
  return r;
}

}  // namespace detail

// Rule on [0, 1] for the weight (1 - t)^a t^b.
inline const Rule& jacobi01(std::size_t n, double a, double b) {
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, double, double>, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, a, b);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Rule r = detail::golub_welsch_jacobi(n, a, b);
  const double scale = std::pow(0.5, a + b + 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    r.x[i] = 0.5 * (1.0 + r.x[i]);
    r.w[i] *= scale;
  }
  return cache.emplace(key, std::move(r)).first->second;
}

inline const Rule& legendre01(std::size_t n) { return jacobi01(n, 0.0, 0.0); }

// Gauss-Legendre on [lo, hi].
template <class F>
double legendre(F&& f, double lo, double hi, std::size_t n = 16) {
  const Rule& r = legendre01(n);
  const double len = hi - lo;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += r.w[i] * f(lo + len * r.x[i]);
  return s * len;
}

}  // namespace fracnoise::quad
