// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fracnoise/spectral_sim.hpp"

using namespace fracnoise;
using std::numbers::pi;

namespace {

std::vector<double> uniform_points(std::size_t n) {
  std::vector<double> x(n + 1);
  for (std::size_t i = 0; i <= n; ++i) x[i] = pi * static_cast<double>(i) / static_cast<double>(n);
  return x;
}

// s'' + eta s' + mu s = 0, s(0) = 1, s'(0) = 0: resolvent of the kernel e^{-eta t}.
double damped_oscillation(double eta, double mu, double t) {
  const double disc = eta * eta / 4.0 - mu;
  if (disc < 0.0) {
    const double w = std::sqrt(-disc);
    return std::exp(-eta * t / 2.0) * (std::cos(w * t) + eta / (2.0 * w) * std::sin(w * t));
  }
  const double r = std::sqrt(disc);
  const double l1 = -eta / 2.0 + r, l2 = -eta / 2.0 - r;
  return (l2 * std::exp(l1 * t) - l1 * std::exp(l2 * t)) / (l2 - l1);
}

}  // namespace

TEST(SpectralModel, ExampleFamily) {
  const auto m = SpectralModel::example_family(2, 1.5, 6);
  ASSERT_EQ(m.modes(), 6u);
  for (std::size_t k = 1; k <= 6; ++k) {
    EXPECT_DOUBLE_EQ(m.mu[k - 1], std::pow(k, 4.0));
    EXPECT_DOUBLE_EQ(m.gamma[k - 1], std::pow(k, -1.5));
  }
  EXPECT_NEAR(m.eigenfunction(3, 0.4), std::sqrt(2.0 / pi) * std::sin(1.2), 1e-15);
  EXPECT_NEAR(m.gradient(3, 0.4), 3.0 * std::sqrt(2.0 / pi) * std::cos(1.2), 1e-15);
  EXPECT_THROW(SpectralModel::example_family(0, 2.0, 4), std::invalid_argument);
  EXPECT_THROW(SpectralModel::example_family(1, 1.0, 4), std::invalid_argument);
  EXPECT_THROW(m.eigenfunction(1, 4.0), std::domain_error);
}

TEST(SpectralModel, TabulatedValidation) {
  EXPECT_NO_THROW(SpectralModel::tabulated({1.0, 2.0, 2.0}, {1.0, 0.0, 0.5}));
  EXPECT_THROW(SpectralModel::tabulated({2.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(SpectralModel::tabulated({1.0, 2.0}, {1.0, -1.0}), std::invalid_argument);
  EXPECT_THROW(SpectralModel::tabulated({1.0}, {1.0, 1.0}), std::invalid_argument);
}

TEST(SpectralModel, SineFamilyIsOrthonormal) {
  const auto m = SpectralModel::example_family(1, 2.0, 24);
  EXPECT_LT(orthonormality_defect(m, 24), 1e-12);
}

TEST(EigenfunctionBound, SineFamilyFirstOrder) {
  const auto m = SpectralModel::example_family(1, 2.0, 40);
  const auto r = check_eigenfunction_bound(m, uniform_points(2000), 40);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.constant, std::sqrt(2.0 / pi), 1e-6);
}

TEST(EigenfunctionBound, SineFamilyHigherOrder) {
  const auto m = SpectralModel::example_family(2, 2.0, 40);
  const auto r = check_eigenfunction_bound(m, uniform_points(2000), 40);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.constant, std::sqrt(2.0 / pi), 1e-6);
}

TEST(EigenfunctionBound, GrowingFamilyFails) {
  auto m = SpectralModel::example_family(1, 2.0, 40);
  std::vector<double> scale(40);
  for (std::size_t n = 0; n < 40; ++n) scale[n] = static_cast<double>(n + 1);
  const auto r = check_eigenfunction_bound(m.with_eigen_scale(scale), uniform_points(2000), 40);
  EXPECT_FALSE(r.holds);
}

TEST(SeriesCondition, ExistenceAlwaysHoldsForExample) {
  for (int m : {1, 2, 3})
    for (double l : {1.05, 2.0, 3.5})
      for (double H : {0.1, 0.5, 0.9})
        for (double rho : {1.0, 1.5, 1.99}) {
          const auto model = SpectralModel::example_family(m, l, 400);
          const auto c = series_condition(model, -2.0 * H / rho, 400);
          EXPECT_TRUE(c.analytic);
          EXPECT_NEAR(c.p_exponent, l + 4.0 * m * H / rho, 1e-12);
          EXPECT_TRUE(c.convergent);
          EXPECT_TRUE(c.numeric_convergent);
        }
}

TEST(SeriesCondition, ExistenceThresholdInBeta) {
  const double l = 2.0, H = 0.75, alpha = 1.0;
  const int m = 1;
  const auto model = SpectralModel::example_family(m, l, 2000);
  const double threshold = 1.0 - H - alpha * (l - 1.0) / (4.0 * m);
  for (double beta = -0.5; beta <= 1.0; beta += 0.05) {
    if (std::abs(beta - threshold) < 1e-9) continue;
    const auto c = series_condition(model, existence_exponent(alpha, beta, H), 2000);
    EXPECT_EQ(c.analytic_convergent, beta > threshold) << beta;
    if (std::abs(beta - threshold) > 0.02) {
      EXPECT_EQ(c.numeric_convergent, beta > threshold) << beta;
    }
  }
}

TEST(SeriesCondition, ZeroWeights) {
  const auto model = SpectralModel::tabulated({1.0, 4.0, 9.0}, {0.0, 0.0, 0.0});
  const auto c = series_condition(model, 3.0, 3);
  EXPECT_TRUE(c.convergent);
  EXPECT_EQ(c.sum(), 0.0);
}

TEST(SeriesCondition, TabulatedTailBracket) {
  std::vector<double> mu(200), g(200);
  for (std::size_t k = 1; k <= 200; ++k) {
    mu[k - 1] = static_cast<double>(k * k);
    g[k - 1] = 1.0 / static_cast<double>(k);
  }
  const auto model = SpectralModel::tabulated(mu, g);
  // sum k^{-1} k^{-2}: tail beyond 200 by direct summation
  const auto c = series_condition(model, -1.0, 200);
  double tail = 0.0;
  for (int k = 201; k < 2000000; ++k) tail += std::pow(k, -3.0);
  EXPECT_TRUE(c.convergent);
  EXPECT_LE(c.tail_low, tail * (1 + 1e-9));
  EXPECT_GE(c.tail_high, tail * (1 - 1e-9));
  EXPECT_NEAR(c.fitted_decay, 3.0, 1e-9);
  // harmonic series
  EXPECT_FALSE(series_condition(model, 0.0, 200).convergent);
}

TEST(ExampleConditions, AdmissibleBetaSatisfiesAll) {
  for (double l : {1.2, 3.0})
    for (int m : {1, 2})
      for (double H : {0.3, 0.75}) {
        const double alpha = 1.2, theta = 0.4;
        for (double beta = 1.0 - H + theta + 0.01; beta < 1.0 - H + alpha; beta += 0.1) {
          const auto c = example_conditions(l, m, alpha, beta, H, theta);
          EXPECT_TRUE(c.existence.holds() && c.time.holds() && c.space.holds()) << l << m << H << beta;
        }
      }
}

TEST(ExampleConditions, ThresholdArithmetic) {
  const auto c = example_conditions(2.0, 1, 1.0, 0.4, 0.75, 0.5);
  EXPECT_NEAR(c.existence.threshold, 0.0, 1e-15);
  EXPECT_NEAR(c.time.threshold, 0.5, 1e-15);
  EXPECT_TRUE(c.existence.holds());
  EXPECT_FALSE(c.time.holds());
  EXPECT_TRUE(c.existence.consistent());
  EXPECT_TRUE(c.time.consistent());
  EXPECT_TRUE(c.space.consistent());
}

TEST(ExampleConditions, ZeroThetaMergesFirstTwo) {
  for (double beta : {0.2, 0.5, 0.9, 1.3}) {
    const auto c = example_conditions(1.5, 2, 0.8, beta, 0.6, 0.0);
    EXPECT_EQ(c.existence.holds(), c.time.holds());
    EXPECT_DOUBLE_EQ(c.existence.threshold, c.time.threshold);
  }
}

TEST(ExampleConditions, RangeChecks) {
  EXPECT_THROW(example_conditions(1.0, 1, 1.0, 1.0, 0.5, 0.1), std::invalid_argument);
  EXPECT_THROW(example_conditions(2.0, 0, 1.0, 1.0, 0.5, 0.1), std::invalid_argument);
  EXPECT_THROW(example_conditions(2.0, 1, 2.0, 1.0, 0.5, 0.1), std::invalid_argument);
  EXPECT_THROW(example_conditions(2.0, 1, 1.0, 1.0, 1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(example_conditions(2.0, 1, 1.0, 1.0, 0.5, 1.5), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST(Variance, ZeroAtStart) {
  const auto model = SpectralModel::example_family(1, 2.0, 5);
  const auto v = variance_spectral(model, Dynamics::with_kernel(KernelSpec::exponential(1.0)), 0.0, 0.7, 5);
  EXPECT_EQ(v.value, 0.0);
}

TEST(Variance, BrownianCaseIsPlainL2) {
  const auto model = SpectralModel::example_family(1, 2.0, 4);
  const double eta = 1.0, t = 1.5;
  VarianceOptions o;
  o.step = 1.0 / 1024.0;
  const auto v = variance_spectral(model, Dynamics::with_kernel(KernelSpec::exponential(eta)), t, 0.5, 4, o);
  double direct = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    // continuous int_0^t s_n^2 by composite Simpson on a fine grid
    const int K = 20000;
    const double h = t / K;
    double s = 0.0;
    for (int i = 0; i <= K; ++i) {
      const double w = (i == 0 || i == K) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * std::pow(damped_oscillation(eta, model.mu[n - 1], i * h), 2);
    }
    direct += model.gamma[n - 1] * s * h / 3.0;
  }
  EXPECT_NEAR(v.value, direct, 2e-3 * direct);
}

TEST(Variance, BrownianCaseGrowsWithTime) {
  const auto model = SpectralModel::example_family(1, 2.0, 6);
  const auto dyn = Dynamics::with_kernel(KernelSpec::tempered(0.5, 1.0));
  VarianceOptions o;
  o.step = 1.0 / 64.0;
  const ModeTable table = mode_table(model, dyn, o.step, 192, 6);
  std::vector<double> prev(6, 0.0);
  for (std::size_t j = 8; j <= 192; j += 8) {
    const auto v = variance_from_table(model, table, j, HurstParameter(0.5));
    for (std::size_t n = 0; n < 6; ++n) {
      EXPECT_GE(v.terms[n], prev[n]);
      prev[n] = v.terms[n];
    }
  }
}

TEST(Variance, NondecreasingInModeCount) {
  const auto model = SpectralModel::example_family(1, 2.0, 12);
  const auto dyn = Dynamics::fractional(1.0, 1.0);
  double prev = 0.0;
  for (std::size_t N : {1, 3, 6, 12}) {
    const double v = variance_spectral(model, dyn, 1.0, 0.3, N).value;
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(Covariance, ZeroWeightGivesZeroEigenvalue) {
  const auto model = SpectralModel::tabulated({1.0, 4.0, 9.0}, {1.0, 0.0, 0.25});
  const auto c = covariance_eigenvalues(model, Dynamics::with_kernel(KernelSpec::exponential(2.0)), 1.0, 0.75, 3);
  EXPECT_EQ(c.eigenvalues[1], 0.0);
  EXPECT_GT(c.eigenvalues[0], 0.0);
  const auto v = variance_spectral(model, Dynamics::with_kernel(KernelSpec::exponential(2.0)), 1.0, 0.75, 3);
  EXPECT_DOUBLE_EQ(c.trace, v.value);
  EXPECT_NEAR(c.bound, 1.0 + 0.25 * std::pow(9.0, -0.75), 1e-14);
}

// ---------------------------------------------------------------------------

TEST(Simulation, ZeroWeightsGiveZeroEnsemble) {
  const auto model = SpectralModel::tabulated({1.0, 4.0}, {0.0, 0.0});
  const auto e = simulate_solution(model, Dynamics::fractional(1.0, 1.0), 0.6, 1.0, 1.0 / 32.0, 2, 10, 7);
  for (double v : e.values) EXPECT_EQ(v, 0.0);
}

TEST(Simulation, MatchesSpectralVariance) {
  const auto model = SpectralModel::example_family(1, 2.0, 5);
  const auto dyn = Dynamics::with_kernel(KernelSpec::exponential(1.0));
  for (double H : {0.3, 0.75}) {
    SimulationOptions o;
    o.stride = 16;
    const auto e = simulate_solution(model, dyn, H, 1.0, 1.0 / 64.0, 5, 2000, 11, o);
    for (std::size_t q = 1; q < e.points(); ++q) {
      const auto mc = mc_variance(e, q);
      const double exact = exact_variance(e, q);
      EXPECT_LT(std::abs(mc.mean - exact), 3.0 * mc.stderr_) << H << " " << e.time(q);
    }
    for (std::size_t k = 0; k < e.replicates; ++k) EXPECT_EQ(e.X(1, k, 0), 0.0);
  }
}

TEST(Simulation, ModesAreCenteredAndUncorrelated) {
  const auto model = SpectralModel::example_family(1, 1.5, 4);
  SimulationOptions o;
  o.stride = 32;
  const auto e = simulate_solution(model, Dynamics::fractional(0.8, 1.0), 0.4, 1.0, 1.0 / 32.0, 4, 3000, 5, o);
  const std::size_t q = e.points() - 1;
  const auto means = mc_mode_means(e, q);
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<double> x(e.replicates);
    for (std::size_t k = 0; k < e.replicates; ++k) x[k] = e.X(n, k, q);
    EXPECT_LT(std::abs(means[n - 1]), 3.0 * mc_estimate(x).stderr_);
  }
  EXPECT_LT(max_mode_correlation(e, q), 3.0 / std::sqrt(3000.0));
}

TEST(Simulation, IndependentOfWorkerCount) {
  const auto model = SpectralModel::example_family(1, 2.0, 6);
  const auto dyn = Dynamics::with_kernel(KernelSpec::tempered(0.5, 1.0));
  SimulationOptions a, b;
  a.workers = 1;
  b.workers = 5;
  b.table.workers = 3;
  const auto e1 = simulate_solution(model, dyn, 0.65, 0.5, 1.0 / 64.0, 6, 37, 99, a);
  const auto e2 = simulate_solution(model, dyn, 0.65, 0.5, 1.0 / 64.0, 6, 37, 99, b);
  ASSERT_EQ(e1.values.size(), e2.values.size());
  for (std::size_t i = 0; i < e1.values.size(); ++i) ASSERT_EQ(e1.values[i], e2.values[i]);
}

TEST(Simulation, FftAgreesWithDirectSum) {
  const auto model = SpectralModel::example_family(1, 2.0, 3);
  const auto dyn = Dynamics::fractional(0.7, 0.9);
  SimulationOptions a, b;
  a.method = ConvolutionMethod::direct;
  b.method = ConvolutionMethod::fft;
  const auto e1 = simulate_solution(model, dyn, 0.3, 2.0, 1.0 / 128.0, 3, 4, 3, a);
  const auto e2 = simulate_solution(model, dyn, 0.3, 2.0, 1.0 / 128.0, 3, 4, 3, b);
  double scale = 0.0;
  for (double v : e1.values) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < e1.values.size(); ++i) EXPECT_NEAR(e1.values[i], e2.values[i], 1e-12 * scale);
}

TEST(Simulation, ResourceLimits) {
  const auto model = SpectralModel::example_family(1, 2.0, 3);
  SimulationOptions o;
  o.max_values = 100;
  EXPECT_THROW(simulate_solution(model, Dynamics::fractional(1.0, 1.0), 0.5, 1.0, 1.0 / 64.0, 3, 10, 1, o),
               std::invalid_argument);
  EXPECT_THROW(simulate_solution(model, Dynamics::fractional(1.0, 1.0), 0.5, 1.0, 0.3, 3, 10, 1), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST(Field, VanishesOnTheBoundary) {
  const auto model = SpectralModel::example_family(1, 2.0, 8);
  SimulationOptions o;
  o.stride = 8;
  const auto e = simulate_solution(model, Dynamics::fractional(1.0, 1.0), 0.6, 0.5, 1.0 / 32.0, 8, 6, 2, o);
  const auto f = evaluate_field(e, {0.0, pi});
  for (std::size_t q = 0; q < f.times.size(); ++q)
    for (std::size_t k = 0; k < f.replicates; ++k) {
      EXPECT_NEAR(f(q, 0, k), 0.0, 1e-14);
      EXPECT_NEAR(f(q, 1, k), 0.0, 1e-13);
    }
  EXPECT_THROW(evaluate_field(e, {-0.1}), std::domain_error);
}

TEST(Field, Parseval) {
  const auto model = SpectralModel::example_family(1, 2.0, 10);
  SimulationOptions o;
  o.stride = 16;
  const auto e = simulate_solution(model, Dynamics::with_kernel(KernelSpec::exponential(1.0)), 0.7, 0.5, 1.0 / 32.0,
                                   10, 5, 8, o);
  const quad::Rule& r = quad::legendre01(24);
  std::vector<double> xi, w;
  const std::size_t panels = 16;
  for (std::size_t p = 0; p < panels; ++p)
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      xi.push_back(pi * (static_cast<double>(p) + r.x[i]) / panels);
      w.push_back(pi / panels * r.w[i]);
    }
  const auto f = evaluate_field(e, xi);
  const std::size_t q = e.points() - 1;
  for (std::size_t k = 0; k < e.replicates; ++k) {
    double l2 = 0.0, modal = 0.0;
    for (std::size_t x = 0; x < xi.size(); ++x) l2 += w[x] * f(q, x, k) * f(q, x, k);
    for (std::size_t n = 1; n <= e.modes; ++n) modal += e.X(n, k, q) * e.X(n, k, q);
    EXPECT_NEAR(l2, modal, 1e-12 * modal);
  }
}

TEST(Field, SingleMode) {
  const auto model = SpectralModel::tabulated({3.0}, {0.5});
  SimulationOptions o;
  o.stride = 4;
  const auto e = simulate_solution(model, Dynamics::fractional(1.5, 1.0), 0.35, 0.5, 1.0 / 16.0, 1, 3, 4, o);
  const auto f = evaluate_field(e, {0.3, 1.7});
  for (std::size_t q = 0; q < e.points(); ++q)
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_DOUBLE_EQ(f(q, 0, k), e.X(1, k, q) * model.eigenfunction(1, 0.3));
      EXPECT_DOUBLE_EQ(f(q, 1, k), e.X(1, k, q) * model.eigenfunction(1, 1.7));
    }
}

TEST(DeterministicPart, InitialValueAndOscillation) {
  const auto model = SpectralModel::example_family(1, 2.0, 3);
  const auto k = KernelSpec::exponential(0.5);
  const std::vector<double> u0{1.0, 0.0, -2.0};
  EXPECT_EQ(deterministic_part(model, k, u0, 0.0), u0);
  for (double t : {0.3, 1.0, 2.5}) {
    const auto v = deterministic_part(model, k, u0, t);
    EXPECT_NEAR(v[0], damped_oscillation(0.5, 1.0, t), 1e-5);
    EXPECT_EQ(v[1], 0.0);
    EXPECT_NEAR(v[2], -2.0 * damped_oscillation(0.5, 9.0, t), 1e-5);
  }
  for (double v : deterministic_part(model, k, {0.0, 0.0, 0.0}, 1.0)) EXPECT_EQ(v, 0.0);
}

// ---------------------------------------------------------------------------

TEST(StructureFunction, BrownianUndampedMode) {
  const auto model = SpectralModel::tabulated({0.0}, {0.7});
  const auto e = simulate_solution(model, Dynamics::with_kernel(KernelSpec::exponential(1.0)), 0.5, 4.0, 1.0 / 64.0,
                                   1, 2000, 21);
  const auto sf = structure_function_time(e, {4, 8, 16, 40});
  for (const auto& r : sf.rows) {
    EXPECT_NEAR(r.exact, 0.7 * r.lag, 1e-12);
    EXPECT_LT(std::abs(r.value - r.exact), 3.0 * r.stderr_);
  }
  EXPECT_NEAR(sf.slope_exact, 1.0, 1e-10);
  EXPECT_NEAR(sf.slope, 1.0, 0.1);
}

TEST(StructureFunction, ZeroEnsembleAndGuards) {
  const auto model = SpectralModel::tabulated({1.0, 4.0}, {0.0, 0.0});
  const auto e = simulate_solution(model, Dynamics::fractional(1.0, 1.0), 0.5, 1.0, 1.0 / 64.0, 2, 4, 1);
  const auto sf = structure_function_time(e, {4, 8});
  for (const auto& r : sf.rows) {
    EXPECT_EQ(r.value, 0.0);
    EXPECT_EQ(r.exact, 0.0);
  }
  EXPECT_THROW(structure_function_time(e, {2, 8}), std::invalid_argument);
  EXPECT_THROW(structure_function_time(e, {8}), std::invalid_argument);
  EXPECT_THROW(structure_function_time(e, {4, 60}), std::invalid_argument);
}

TEST(StructureFunction, SpaceMatchesExactSeries) {
  const auto model = SpectralModel::example_family(1, 2.0, 12);
  SimulationOptions o;
  o.stride = 32;
  const auto e = simulate_solution(model, Dynamics::with_kernel(KernelSpec::tempered(0.5, 1.0)), 0.6, 1.0,
                                   1.0 / 64.0, 12, 2000, 17, o);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, pi);
  std::vector<XiPair> pairs;
  for (int i = 0; i < 10; ++i) pairs.push_back({u(rng), u(rng)});
  pairs.push_back({1.0, 1.0});
  const auto sf = structure_function_space(e, pairs, e.points() - 1);
  for (std::size_t i = 0; i < 10; ++i)
    EXPECT_LT(std::abs(sf.rows[i].value - sf.rows[i].exact), 3.0 * sf.rows[i].stderr_) << i;
  EXPECT_EQ(sf.rows[10].value, 0.0);
  EXPECT_EQ(sf.rows[10].exact, 0.0);
  EXPECT_THROW(structure_function_space(e, {{1.0, 1.01}}, 1, 0.05), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST(Sigma, FirstSeriesMatchesClosedForm) {
  const double l = 2.0, alpha = 1.0, theta = 0.2;
  const int m = 1;
  const auto model = SpectralModel::example_family(m, l, 400);
  const double pts[][2] = {{0.9, 0.75}, {0.5, 0.6}, {0.3, 0.4}, {1.2, 0.3}, {0.15, 0.9}};
  for (const auto& p : pts) {
    const double beta = p[0], H = p[1];
    const auto s = sigma_conditions(model, alpha, beta, H, theta, 400);
    const auto c = example_conditions(l, m, alpha, beta, H, theta);
    EXPECT_EQ(s.sigma1.convergent, c.existence.holds()) << beta << " " << H;
    EXPECT_EQ(s.sigma2.convergent, c.time.holds()) << beta << " " << H;
    EXPECT_EQ(s.sigma3.convergent, c.space.holds()) << beta << " " << H;
  }
}

TEST(Sigma, ZeroThetaDoublesTheNorm) {
  const auto model = SpectralModel::example_family(1, 2.0, 30);
  const auto s = sigma_conditions(model, 1.2, 0.8, 0.6, 0.0, 30);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_NEAR(s.sigma2.partial_sums[i], 4.0 * s.sigma1.partial_sums[i], 1e-12 * s.sigma2.partial_sums[i]);
  EXPECT_EQ(s.sigma1.convergent, s.sigma2.convergent);
}

TEST(Sigma, OutsideWindowDiverges) {
  const auto model = SpectralModel::example_family(1, 3.0, 30);
  const double H = 0.6, alpha = 0.8;
  for (double beta : {1.0 - H - 0.05, 1.0 - H + alpha + 0.05}) {
    const auto s = sigma_conditions(model, alpha, beta, H, 0.1, 30);
    EXPECT_FALSE(s.sigma1.convergent) << beta;
    EXPECT_FALSE(std::isfinite(s.sigma1.sum()));
  }
}

TEST(Alpha2, LocalCondition) {
  for (int m : {1, 2, 3})
    for (double l : {1.1, 1.5, 2.5})
      for (double beta : {0.6, 0.8, 1.0, 1.4, 2.5}) {
        const auto model = SpectralModel::example_family(m, l, 500);
        const auto r = alpha2_local_condition(model, beta, 500);
        if (std::abs(l + 2.0 * m * (beta - 1.0) - 1.0) > 1e-9) {
          EXPECT_EQ(r.convergent, l + 2.0 * m * (beta - 1.0) > 1.0);
        }
        if (std::abs(l + m * (beta - 1.0) - 1.0) > 1e-9) {
          EXPECT_EQ(r.displayed_convergent, l + m * (beta - 1.0) > 1.0);
        }
      }
  const auto model = SpectralModel::example_family(3, 1.1, 100);
  EXPECT_FALSE(alpha2_local_condition(model, 0.6, 100).convergent);
  EXPECT_TRUE(alpha2_local_condition(model, 1.0, 100).convergent);
  EXPECT_THROW(alpha2_local_condition(model, 0.5, 100), std::invalid_argument);
  EXPECT_THROW(alpha2_local_condition(model, 3.0, 100), std::invalid_argument);
}
