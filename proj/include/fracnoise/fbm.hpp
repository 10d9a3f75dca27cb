// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "fracnoise/core/error.hpp"
#include "fracnoise/core/fft.hpp"
#include "fracnoise/core/parallel.hpp"
#include "fracnoise/core/sampled_function.hpp"

namespace fracnoise {

// ---------------------------------------------------------------------------
// Philox4x32-10 counter-based generator. The key holds the master seed, the
// upper counter words the stream index, the lower ones the block index, so
// every (seed, stream) pair is an independent, random-access sequence.

class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  Philox4x32(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  static Block bijection(Block ctr, Key key) {
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

  result_type operator()() {
    if (pos_ == 4) {
      buf_ = bijection({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                       key_);
      ++block_;
      pos_ = 0;
    }
    return buf_[pos_++];
  }

 private:
  Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Block buf_{};
  int pos_ = 4;
};

// Master seed plus the rule mapping (mode n, replicate k) to a substream.
struct SeedSpec {
  std::uint64_t master = 0;

  static constexpr std::uint64_t replicate_bits = 20;

  static std::uint64_t stream(std::uint64_t mode, std::uint64_t replicate) {
    require(replicate < (std::uint64_t{1} << replicate_bits), "replicate index exceeds 2^20");
    return (mode << replicate_bits) + replicate;
  }

  Philox4x32 engine(std::uint64_t mode, std::uint64_t replicate) const {
    return {master, stream(mode, replicate)};
  }
};

// ---------------------------------------------------------------------------

struct FbmPath {
  HurstParameter hurst{0.5};
  double step = 1.0;
  std::vector<double> values;  // values[0] = 0
  std::uint64_t master_seed = 0;
  std::uint64_t stream = 0;

  std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
  double horizon() const { return step * static_cast<double>(steps()); }
};

inline double fbm_covariance(double s, double t, HurstParameter H) {
  require(s >= 0.0 && t >= 0.0, "fbm_covariance: times must be nonnegative");
  const double p = 2.0 * H.value();
  return 0.5 * (std::pow(t, p) + std::pow(s, p) - std::pow(std::abs(t - s), p));
}

// Autocovariance of increments over cells of width h at lag k.
inline double fgn_autocovariance(double k, HurstParameter H, double h) {
  const double p = 2.0 * H.value();
  k = std::abs(k);
  return 0.5 * std::pow(h, p) * (std::pow(k + 1.0, p) - 2.0 * std::pow(k, p) + std::pow(std::abs(k - 1.0), p));
}

// Exact-in-law sampler of n consecutive fBm increments (circulant embedding,
// dense Cholesky as fallback). Immutable after construction; increments() may
// be called concurrently.
class FgnSampler {
 public:
  FgnSampler(HurstParameter H, std::size_t n_steps, double step, bool force_dense = false)
      : H_(H), n_(n_steps), step_(step) {
    require(n_steps >= 1, "n_steps must be at least 1");
    require(std::isfinite(step) && step > 0.0, "grid step must be positive");
    const std::size_t m = 2 * n_;
    std::vector<std::complex<double>> c(m), lam(m);
    for (std::size_t j = 0; j <= n_; ++j) c[j] = fgn_autocovariance(static_cast<double>(j), H, step);
    for (std::size_t j = 1; j < n_; ++j) c[m - j] = c[j];
    fft::forward(c, lam);
    double top = 0.0;
    for (const auto& l : lam) top = std::max(top, l.real());
    sqrt_lambda_.resize(m);
    bool ok = top > 0.0 && !force_dense;
    for (std::size_t k = 0; k < m && ok; ++k) {
      double l = lam[k].real();
      if (l < 0.0) {
        if (-l < 1e-10 * top)
          l = 0.0;
        else
          ok = false;
      }
      sqrt_lambda_[k] = std::sqrt(l / static_cast<double>(m));
    }
    if (!ok) {
      sqrt_lambda_.clear();
      Eigen::MatrixXd cov(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c[i > j ? i - j : j - i].real();
      Eigen::LLT<Eigen::MatrixXd> llt(cov);
      if (llt.info() != Eigen::Success)
        throw NumericalFailure("increment covariance is neither embeddable nor positive definite");
      chol_ = llt.matrixL();
    }
  }

  bool uses_embedding() const { return !sqrt_lambda_.empty(); }
  std::size_t steps() const { return n_; }
  double step() const { return step_; }
  HurstParameter hurst() const { return H_; }

  template <class Engine>
  std::vector<double> increments(Engine& eng) const {
    std::normal_distribution<double> z;
    std::vector<double> out(n_);
    if (uses_embedding()) {
      const std::size_t m = sqrt_lambda_.size();
      std::vector<std::complex<double>> w(m), y(m);
      for (std::size_t k = 0; k < m; ++k) {
        const double re = z(eng);
        const double im = z(eng);
        w[k] = sqrt_lambda_[k] * std::complex<double>(re, im);
      }
      fft::forward(w, y);
      for (std::size_t j = 0; j < n_; ++j) out[j] = y[j].real();
    } else {
      Eigen::VectorXd g(static_cast<Eigen::Index>(n_));
      for (std::size_t j = 0; j < n_; ++j) g[static_cast<Eigen::Index>(j)] = z(eng);
      const Eigen::VectorXd x = chol_ * g;
      for (std::size_t j = 0; j < n_; ++j) out[j] = x[static_cast<Eigen::Index>(j)];
    }
    return out;
  }

  template <class Engine>
  std::vector<double> path(Engine& eng) const {
    const std::vector<double> dx = increments(eng);
    std::vector<double> p(n_ + 1, 0.0);
    for (std::size_t j = 0; j < n_; ++j) p[j + 1] = p[j] + dx[j];
    return p;
  }

 private:
  HurstParameter H_;
  std::size_t n_;
  double step_;
  std::vector<double> sqrt_lambda_;
  Eigen::MatrixXd chol_;
};

// `count` paths of mode `mode`; path k uses stream (mode, k).
inline std::vector<FbmPath> sample_fbm(HurstParameter H, std::size_t n_steps, double step,
                                       std::size_t count, const SeedSpec& seed,
                                       std::uint64_t mode = 0, unsigned workers = 1) {
  require(count >= 1, "count must be at least 1");
  const FgnSampler sampler(H, n_steps, step);
  std::vector<FbmPath> out(count);
  parallel_for(count, workers, [&](std::size_t k) {
    Philox4x32 eng = seed.engine(mode, k);
    out[k] = FbmPath{H, step, sampler.path(eng), seed.master, SeedSpec::stream(mode, k)};
  });
  return out;
}

// Forward Riemann-Stieltjes sum sum_i f(t_i) (beta(t_{i+1}) - beta(t_i)).
inline double wiener_integral(const SampledFunction& f, const FbmPath& path) {
  require(std::abs(f.step() - path.step) <= 1e-12 * path.step, "wiener_integral: grid steps differ");
  if (f.empty()) return 0.0;
  const double off = f.start() / path.step;
  const double k = std::round(off);
  require(std::abs(off - k) < 1e-8, "wiener_integral: grid not aligned with the path");
  require(k >= 0.0 && k + static_cast<double>(f.size()) <= static_cast<double>(path.steps()) + 1e-9,
          "wiener_integral: integrand extends beyond the path window");
  const auto base = static_cast<std::size_t>(k);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * (path.values[base + i + 1] - path.values[base + i]);
  return s;
}

// Independent per-mode noise sqrt(gamma_n) beta_n^H; result[n][k] is mode n,
// replicate k, drawn from stream (n, k).
inline std::vector<std::vector<FbmPath>> sample_noise_coefficients(
    const std::vector<double>& gamma, std::size_t n_modes, HurstParameter H, std::size_t n_steps,
    double step, const SeedSpec& seed, std::size_t replicates = 1, unsigned workers = 1) {
  require(n_modes <= gamma.size(), "fewer weights than modes");
  for (std::size_t n = 0; n < n_modes; ++n)
    require(std::isfinite(gamma[n]) && gamma[n] >= 0.0, "noise weights must be nonnegative");
  const FgnSampler sampler(H, n_steps, step);
  std::vector<std::vector<FbmPath>> out(n_modes, std::vector<FbmPath>(replicates));
  parallel_for(n_modes * replicates, workers, [&](std::size_t idx) {
    const std::size_t n = idx / replicates, k = idx % replicates;
    FbmPath p{H, step, std::vector<double>(n_steps + 1, 0.0), seed.master, SeedSpec::stream(n, k)};
    if (gamma[n] > 0.0) {
      Philox4x32 eng = seed.engine(n, k);
      p.values = sampler.path(eng);
      const double s = std::sqrt(gamma[n]);
      for (double& v : p.values) v *= s;
    }
    out[n][k] = std::move(p);
  });
  return out;
}

}  // namespace fracnoise
