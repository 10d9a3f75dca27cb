// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fracnoise/kernels.hpp"

using namespace fracnoise;
using cd = std::complex<double>;

TEST(Kernels, PointValues) {
  EXPECT_DOUBLE_EQ(evaluate_kernel(KernelSpec::exponential(1.0), 2.0), std::exp(-2.0));
  EXPECT_NEAR(evaluate_kernel(KernelSpec::riemann_liouville(0.5), 1.0), 1.0 / std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(evaluate_kernel(KernelSpec::tempered(0.5, 1.0), 1.0), std::exp(-1.0) / std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_THROW(evaluate_kernel(KernelSpec::exponential(1.0), 0.0), std::domain_error);
  EXPECT_THROW(KernelSpec::tempered(-0.5, 1.0), std::invalid_argument);
}

TEST(Kernels, DerivativesMatchFiniteDifferences) {
  const double h = 1e-5;
  for (const auto& k : {KernelSpec::tempered(0.5, 1.0), KernelSpec::exponential(2.0),
                        KernelSpec::riemann_liouville(0.3), KernelSpec::tempered(0.7, 0.5).scaled(3.0)})
    for (double t : {0.3, 1.0, 2.5}) {
      auto f = [&](double s, int order) { return order == 0 ? evaluate_kernel(k, s) : kernel_derivative(k, s, order); };
      for (int order = 1; order <= 3; ++order) {
        const double fd = (f(t + h, order - 1) - f(t - h, order - 1)) / (2 * h);
        const double ex = kernel_derivative(k, t, order);
        EXPECT_NEAR(fd, ex, 1e-6 * std::max(1.0, std::abs(ex))) << "t=" << t << " order=" << order;
      }
    }
}

TEST(Kernels, PrimitivesMatchQuadrature) {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (const auto& k : {KernelSpec::tempered(0.5, 1.0), KernelSpec::exponential(1.0), KernelSpec::exponential(3.0).scaled(0.01),
                        KernelSpec::riemann_liouville(0.7), KernelSpec::tempered(0.3, 2.0).scaled(5.0)})
    for (double t : {1e-4, 0.01, 0.7, 4.0})
      for (int m = 0; m <= 2; ++m) {
        auto f = [&](double s) { return s <= 0 ? 0.0 : std::pow(t - s, m) / std::tgamma(m + 1.0) * evaluate_kernel(k, s); };
        const double q = ts.integrate(f, 0.0, t, 1e-14);
        EXPECT_NEAR(kernel_primitive(k, t, m) / q, 1.0, 1e-9) << to_string(k.family) << " t=" << t << " m=" << m;
      }
}

TEST(Laplace, ClosedForms) {
  EXPECT_NEAR(std::abs(laplace_transform(KernelSpec::riemann_liouville(0.4), 1.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(laplace_transform(KernelSpec::exponential(1.0), cd(1, 1)) - 1.0 / cd(2, 1)), 0.0, 1e-15);
  EXPECT_NEAR(laplace_transform(KernelSpec::tempered(0.5, 1.0), 1.0).real(), std::pow(2.0, -0.5), 1e-15);
  EXPECT_THROW(laplace_transform(KernelSpec::exponential(1.0), cd(0, 1)), std::domain_error);
}

TEST(Laplace, NumericFallbackAgreesOnGrid) {
  for (const auto& k : {KernelSpec::tempered(0.5, 1.0), KernelSpec::exponential(1.5), KernelSpec::riemann_liouville(0.6),
                        KernelSpec::tempered(0.8, 0.3).scaled(2.0)})
    for (int i = 0; i < 20; ++i) {
      const cd lam(0.3 + 0.4 * (i % 5), -2.0 + 1.0 * (i / 5));
      const cd a = laplace_transform(k, lam), b = laplace_transform_numeric(k, lam);
      EXPECT_LT(std::abs(a - b), 1e-8 * std::max(1.0, std::abs(a))) << to_string(k.family) << " " << lam;
    }
}

TEST(Rho, FamiliesAndScaleInvariance) {
  for (double a : {0.25, 0.5, 0.9}) {
    EXPECT_NEAR(rho(KernelSpec::riemann_liouville(a)).value, 1 + a, 1e-3);
    EXPECT_NEAR(rho(KernelSpec::tempered(a, 1.0)).value, 1 + a, 1e-3);
  }
  EXPECT_NEAR(rho(KernelSpec::exponential(1.0)).value, 2.0, 1e-3);
  EXPECT_FALSE(rho(KernelSpec::exponential(1.0)).parabolic);
  for (const auto& k : {KernelSpec::tempered(0.5, 1.0), KernelSpec::exponential(2.0), KernelSpec::riemann_liouville(0.3)})
    for (double c : {0.1, 10.0}) {
      const double r = rho(k).value, rc = rho(k.scaled(c)).value;
      EXPECT_NEAR(r, rc, 1e-6);
      EXPECT_GE(rc, 1.0);
      EXPECT_LE(rc, 2.0 + 1e-9);
    }
  EXPECT_THROW(rho(KernelSpec::tempered(1.5, 1.0)), std::invalid_argument);
}

TEST(ThreeMonotone, ShippedFamilies) {
  std::vector<double> grid;
  for (int i = 1; i <= 300; ++i) grid.push_back(0.01 * i);
  for (const auto& k : {KernelSpec::exponential(1.0), KernelSpec::tempered(0.5, 1.0), KernelSpec::riemann_liouville(0.5)}) {
    EXPECT_TRUE(check_three_monotone(k, grid).passed) << to_string(k.family);
    std::vector<double> fine;
    for (int i = 1; i <= 600; ++i) fine.push_back(0.005 * i);
    EXPECT_TRUE(check_three_monotone(k, fine).passed) << to_string(k.family);
  }
}

TEST(ThreeMonotone, TentFailsAtKink) {
  std::vector<double> grid;
  for (int i = 1; i < 300; ++i) grid.push_back(0.01 * i);
  auto rep = check_three_monotone([](double t) { return std::max(2.0 - t, 0.0); },
                                  [](double t) { return t < 2.0 ? -1.0 : 0.0; }, grid);
  EXPECT_FALSE(rep.passed);
  ASSERT_FALSE(rep.violations.empty());
  for (std::size_t i = 0; i < rep.violations.size(); ++i) {
    EXPECT_NEAR(rep.violations[i], 2.0, 0.02);
    EXPECT_EQ(rep.reasons[i], "-b' not convex");
  }
}

TEST(Parabolicity, PowerLawLimit) {
  for (double a : {0.3, 0.5, 0.8}) {
    const double want = a / ((a + 1) * (1 - a));
    auto rep = check_parabolicity_limit(KernelSpec::tempered(a, 1.0), dyadic_t_values());
    EXPECT_TRUE(rep.finite);
    EXPECT_NEAR(rep.limit / want, 1.0, 1e-4);
    auto rl = check_parabolicity_limit(KernelSpec::riemann_liouville(a), dyadic_t_values());
    EXPECT_TRUE(rl.finite);
    EXPECT_NEAR(rl.limit / want, 1.0, 1e-12);
  }
}

TEST(Parabolicity, ExponentialDiverges) {
  auto rep = check_parabolicity_limit(KernelSpec::exponential(1.0), dyadic_t_values());
  EXPECT_FALSE(rep.finite);
  EXPECT_NEAR(rep.limit * rep.t.back(), 1.0, 1e-4);
}
