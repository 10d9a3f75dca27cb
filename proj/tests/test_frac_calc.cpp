// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fracnoise/frac_calc.hpp"

using namespace fracnoise;

namespace {

// E[(sum v_i dB_i)^2] for fBm increments on a grid of width h.
double fgn_quadratic_form(const SampledFunction& f, double H) {
  const double h = f.step();
  auto gamma = [&](double k) {
    const double p = 2.0 * H;
    return 0.5 * std::pow(h, p) *
           (std::pow(std::abs(k + 1), p) - 2.0 * std::pow(std::abs(k), p) + std::pow(std::abs(k - 1), p));
  };
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j)
      s += f[i] * f[j] * gamma(static_cast<double>(i) - static_cast<double>(j));
  return s;
}

SampledFunction random_staircase(std::mt19937_64& rng, std::size_t n, double h, double start) {
  std::normal_distribution<double> z;
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return {h, start, std::move(v)};
}

}  // namespace

TEST(Zeta, ZeroOrderIsOne) { EXPECT_EQ(zeta_constant(0.0), 1.0); }

TEST(Zeta, MatchesHighPrecisionQuadrature) {
  EXPECT_NEAR(zeta_constant(0.25), 0.93488993189788921634, 1e-9);
  EXPECT_NEAR(zeta_constant(-0.25), 1.5479923996813370708, 1e-9);
  EXPECT_NEAR(zeta_constant(0.1), 0.92936355209744343122, 1e-9);
}

TEST(Zeta, MatchesGammaClosedForm) {
  for (double a : {-0.45, -0.4, -0.1, 0.05, 0.3, 0.45}) {
    const double H = a + 0.5;
    const double closed = std::tgamma(H + 0.5) / std::sqrt(std::tgamma(2 * H + 1) * std::sin(std::numbers::pi * H));
    EXPECT_NEAR(zeta_constant(a) / closed, 1.0, 1e-8) << "a=" << a;
  }
}

TEST(Zeta, RejectsEndpoints) {
  EXPECT_THROW(zeta_constant(0.5), std::domain_error);
  EXPECT_THROW(zeta_constant(-0.5), std::domain_error);
}

TEST(FractionalIntegral, IndicatorClosedForm) {
  const double h = 1.0 / 64;
  auto f = SampledFunction::indicator(0.0, 1.0, h);
  for (double a : {0.3, 0.5, 1.0, 1.7}) {
    auto g = fractional_integral(f, FracOrder(a));
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double r = g.node(i);
      const double want = (std::pow(std::max(1.0 - r, 0.0), a) - std::pow(std::max(-r, 0.0), a)) / std::tgamma(a + 1);
      EXPECT_NEAR(g[i], want, 1e-12) << "a=" << a << " r=" << r;
    }
  }
}

TEST(FractionalIntegral, SemigroupOnIndicator) {
  // I^a I^b chi = I^{a+b} chi; the outer integral acts on the node samples of
  // the inner one, so agreement is first order in h.
  const double a = 0.4, b = 0.3;
  for (double h : {1.0 / 128, 1.0 / 512}) {
    auto f = SampledFunction::indicator(0.0, 1.0, h);
    auto inner = fractional_integral(f, FracOrder(b));
    auto outer = fractional_integral(inner, FracOrder(a), 0);
    double err = 0.0;
    for (std::size_t i = 0; i < outer.size(); ++i) {
      const double r = outer.node(i);
      const double want = (std::pow(std::max(1.0 - r, 0.0), a + b) - std::pow(std::max(-r, 0.0), a + b)) /
                          std::tgamma(a + b + 1);
      err = std::max(err, std::abs(outer[i] - want));
    }
    EXPECT_LT(err, 2.0 * h) << "h=" << h;
  }
}

TEST(FractionalIntegral, Errors) {
  EXPECT_THROW(fractional_integral(SampledFunction(0.1, 0.0, {}), FracOrder(0.5)), std::invalid_argument);
  EXPECT_THROW(FracOrder(0.0), std::domain_error);
  EXPECT_THROW(FracOrder(-1.0), std::domain_error);
  EXPECT_THROW(SampledFunction(0.1, 0.0, {1.0, std::nan("")}), std::invalid_argument);
}

TEST(Marchaud, WeightsHaveMarchaudSign) {
  for (double a : {0.1, 0.5, 0.9}) {
    auto d = marchaud_weights(a, 0.01, 2000);
    EXPECT_GT(d[0], 0.0);
    double sum = 0.0;
    for (std::size_t k = 1; k < d.size(); ++k) {
      EXPECT_LE(d[k], 0.0);
      sum += d[k];
    }
    // sum_{k>=1} (-d_k) = d_0 in the limit; the truncated sum stays below.
    EXPECT_LT(-sum, d[0]);
    // the tail decays like k^{-a}, slowly for small a
    if (a >= 0.5) {
      EXPECT_GT(-sum, 0.8 * d[0]);
    }
  }
}

TEST(Marchaud, LeftInverseOnIndicatorAndHat) {
  const double h = 1e-3;
  auto hat = SampledFunction::from_midpoints([](double x) { return 1.0 - std::abs(x - 1.0); }, 0.0, 2000, h);
  for (double a = 0.1; a < 0.95; a += 0.1) {
    for (const auto& f : {SampledFunction::indicator(0.0, 1.0, h), hat}) {
      auto g = marchaud_derivative(fractional_integral(f, FracOrder(a)), FracOrder(a));
      double err = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(g[i] - f(g.node(i) + 0.5 * h)));
      EXPECT_LT(err, 1e-9) << "a=" << a;
    }
  }
}

TEST(Marchaud, ConvergesToAnalyticDerivative) {
  // Right-sided D^a (1 - r)_+^2 = 2/Gamma(3-a) (1 - r)^{2-a} on [0, 1].
  const double a = 0.4;
  double prev = 0.0;
  for (int level = 0; level < 3; ++level) {
    const double h = 1.0 / (200 << level);
    const auto n = static_cast<std::size_t>(std::llround(1.0 / h));
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(1.0 - static_cast<double>(i) * h, 2);
    auto d = marchaud_derivative(SampledFunction(h, 0.0, v), FracOrder(a));
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = static_cast<double>(i) * h;
      err = std::max(err, std::abs(d[i] - 2.0 / std::tgamma(3 - a) * std::pow(1 - r, 2 - a)));
    }
    if (level > 0) {
      EXPECT_LT(err, 0.6 * prev);
    }
    prev = err;
  }
  EXPECT_LT(prev, 5e-3);
}

TEST(Marchaud, RejectsOrderOutsideUnitInterval) {
  auto f = SampledFunction::indicator(0.0, 1.0, 0.1);
  EXPECT_THROW(marchaud_derivative(f, FracOrder(1.0)), std::domain_error);
}

TEST(LambdaNorm, IndicatorLaw) {
  for (double H : {0.25, 0.4, 0.5, 0.6, 0.75})
    for (double t : {0.5, 1.0, 2.0}) {
      auto f = SampledFunction::indicator(0.0, t, t / 16);
      auto n = lambda_h_norm(f, HurstParameter(H));
      ASSERT_TRUE(n.finite);
      EXPECT_NEAR(n.value * n.value / std::pow(t, 2 * H), 1.0, 1e-8) << "H=" << H << " t=" << t;
    }
}

TEST(LambdaNorm, MatchesIncrementCovarianceForRandomStaircases) {
  std::mt19937_64 rng(7);
  for (double H : {0.15, 0.3, 0.45, 0.55, 0.7, 0.9})
    for (std::size_t n : {1, 3, 40, 300}) {
      auto f = random_staircase(rng, n, 0.05, -0.7);
      auto nr = lambda_h_norm(f, HurstParameter(H));
      ASSERT_TRUE(nr.finite);
      const double want = fgn_quadratic_form(f, H);
      EXPECT_NEAR(nr.value * nr.value / want, 1.0, 1e-7) << "H=" << H << " n=" << n;
    }
}

TEST(LambdaNorm, BrownianBranchIsPlainL2) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto f = random_staircase(rng, 1 + i * 7, 0.1, 0.0);
    EXPECT_LT(std::abs(lambda_h_norm(f, HurstParameter(0.5)).value - std::sqrt(f.l2_norm_squared())), 1e-10);
  }
}

TEST(LambdaNorm, ZeroFunction) {
  SampledFunction z(0.1, 0.0, std::vector<double>(10, 0.0));
  EXPECT_EQ(lambda_h_norm(z, HurstParameter(0.3)).value, 0.0);
}

TEST(LambdaInner, IndicatorCovariance) {
  const double h = 0.125;
  auto f = SampledFunction::indicator(0.0, 1.0, h);
  auto g = SampledFunction::indicator(0.0, 2.0, h);
  for (double H : {0.3, 0.75}) {
    auto ip = lambda_h_inner(f, g, HurstParameter(H));
    const double want = 0.5 * (std::pow(2.0, 2 * H) + 1.0 - 1.0);
    EXPECT_NEAR(ip.value, want, 1e-9);
  }
  EXPECT_NEAR(lambda_h_inner(f, g, HurstParameter(0.75)).value, std::sqrt(2.0), 1e-9);
}

TEST(LambdaInner, SymmetricAndConsistent) {
  std::mt19937_64 rng(3);
  auto f = random_staircase(rng, 30, 0.1, 0.0);
  auto g = random_staircase(rng, 20, 0.1, 0.5);
  HurstParameter H(0.35);
  EXPECT_NEAR(lambda_h_inner(f, g, H).value, lambda_h_inner(g, f, H).value, 1e-12);
  const double n = lambda_h_norm(f, H).value;
  EXPECT_NEAR(lambda_h_inner(f, f, H).value, n * n, 1e-10);
}

TEST(LambdaInner, DoubleIntegralFormUpToOneConstant) {
  // For H > 1/2 the inner product is c_H int int f g |s-t|^{2H-2}; the
  // constant is the same for all pairs.
  std::mt19937_64 rng(5);
  const double H = 0.7, h = 0.05, p = 2 * H;
  auto cellpair = [&](double d) {
    return (std::pow(std::abs(d + h), p) + std::pow(std::abs(d - h), p) - 2 * std::pow(std::abs(d), p)) / (p * (p - 1));
  };
  std::vector<double> ratios;
  for (int trial = 0; trial < 5; ++trial) {
    auto f = random_staircase(rng, 25, h, 0.0);
    auto g = random_staircase(rng, 25, h, 0.0);
    double dbl = 0.0;
    for (std::size_t i = 0; i < 25; ++i)
      for (std::size_t j = 0; j < 25; ++j) dbl += f[i] * g[j] * cellpair((double(i) - double(j)) * h);
    ratios.push_back(lambda_h_inner(f, g, HurstParameter(H)).value / dbl);
  }
  for (double r : ratios) EXPECT_NEAR(r / ratios[0], 1.0, 1e-6);
  EXPECT_NEAR(ratios[0], H * (2 * H - 1), 1e-6);
}

TEST(HdotNorm, SpectralAndTimeDomainAgree) {
  auto bump = SampledFunction::from_midpoints(
      [](double x) { return std::exp(-1.0 / (x * (2.0 - x))); }, 0.0, 200, 0.01);
  auto wave = SampledFunction::from_midpoints(
      [](double x) { return std::sin(3 * x) * x * (1 - x); }, 0.0, 150, 1.0 / 150);
  for (const auto& f : {bump, wave})
    for (double sigma : {-0.45, -0.25, 0.0, 0.1, 0.25, 0.45}) {
      auto a = hdot_norm(f, sigma);
      auto b = hdot_norm_spectral(f, sigma);
      ASSERT_TRUE(a.finite && b.finite);
      EXPECT_NEAR(a.value / b.value, 1.0, 1e-6) << "sigma=" << sigma;
    }
}

TEST(HdotNorm, PlancherelAtZero) {
  std::mt19937_64 rng(9);
  auto f = random_staircase(rng, 64, 0.02, 0.3);
  EXPECT_NEAR(hdot_norm_spectral(f, 0.0).value, std::sqrt(f.l2_norm_squared()), 1e-9);
}

TEST(HdotNorm, ZeroMeanExtendsBelowMinusHalf) {
  SampledFunction f(0.1, 0.0, {1.0, -1.0});
  auto a = hdot_norm(f, -0.8);
  auto b = hdot_norm_spectral(f, -0.8);
  ASSERT_TRUE(a.finite && b.finite);
  EXPECT_NEAR(a.value / b.value, 1.0, 1e-6);
  EXPECT_FALSE(hdot_norm(SampledFunction(0.1, 0.0, {1.0, 2.0}), -0.6).finite);
}

TEST(HdotNorm, DivergenceIsReported) {
  auto f = SampledFunction::indicator(0.0, 1.0, 0.1);
  EXPECT_FALSE(hdot_norm(f, 0.5).finite);
  EXPECT_FALSE(hdot_norm_spectral(f, 0.5).finite);
  EXPECT_FALSE(hdot_norm(f, -0.5).finite);
  EXPECT_FALSE(hdot_norm_spectral(f, -0.7).finite);
}

TEST(HdotNorm, IndicatorScaling) {
  // ||chi_(0,t)||^2_{H^sigma} = t^{1-2 sigma} zeta(-sigma)^2 / Gamma(1-sigma)^2.
  for (double sigma : {-0.3, 0.2})
    for (double t : {0.5, 2.0}) {
      auto f = SampledFunction::indicator(0.0, t, t / 8);
      const double z = zeta_constant(-sigma), g = std::tgamma(1 - sigma);
      const double want = std::pow(t, 1 - 2 * sigma) * z * z / (g * g);
      EXPECT_NEAR(std::pow(hdot_norm_spectral(f, sigma).value, 2) / want, 1.0, 1e-7);
    }
}

TEST(TimeReversal, IndicatorIsSymmetric) {
  auto f = SampledFunction::indicator(0.0, 1.0, 0.25);
  auto g = time_reversal_shift(f, 1.0);
  EXPECT_DOUBLE_EQ(g.start(), 0.0);
  EXPECT_DOUBLE_EQ(g.support_end(), 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(g[i], 1.0);
}

TEST(TimeReversal, LinearRamp) {
  // tau on (0, 1) reflected at 1 becomes 1 - tau.
  auto f = SampledFunction::from_midpoints([](double x) { return x; }, 0.0, 10, 0.1);
  auto g = time_reversal_shift(f, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], 1.0 - (g.node(i) + 0.05), 1e-12);
}

TEST(TimeReversal, ShiftInvariantNorm) {
  auto f = SampledFunction::from_midpoints([](double x) { return std::exp(-x) * std::cos(4 * x); }, 0.0, 120, 0.025);
  const double ref = hdot_norm(time_reversal_shift(f, 0.0), 0.2).value;
  for (double t : {1.0, 3.0, 5.0}) EXPECT_NEAR(hdot_norm(time_reversal_shift(f, t), 0.2).value / ref, 1.0, 1e-9);
  EXPECT_THROW(time_reversal_shift(f, -1.0), std::invalid_argument);
}

TEST(Hurst, Regimes) {
  EXPECT_EQ(HurstParameter(0.5).regime(), HurstParameter::Regime::brownian);
  EXPECT_EQ(HurstParameter(0.2).regime(), HurstParameter::Regime::anti_persistent);
  EXPECT_EQ(HurstParameter(0.8).regime(), HurstParameter::Regime::persistent);
  EXPECT_THROW(HurstParameter(1.0), std::invalid_argument);
  EXPECT_THROW(HurstParameter(0.0), std::invalid_argument);
}
