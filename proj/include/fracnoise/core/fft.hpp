// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include <fftw3.h>

#include "fracnoise/core/error.hpp"

namespace fracnoise::fft {

namespace detail {

// Plans are created once per size and shared. Execution goes through the
// new-array interface, so every caller supplies its own buffers.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan r2c(int n) { return get(r2c_, n, 0); }
  fftw_plan c2r(int n) { return get(c2r_, n, 1); }
  fftw_plan c2c_forward(int n) { return get(c2c_, n, 2); }

  ~PlanCache() {
    for (auto* m : {&r2c_, &c2r_, &c2c_})
      for (auto& [n, p] : *m) fftw_destroy_plan(p);
  }

 private:
  fftw_plan get(std::map<int, fftw_plan>& m, int n, int kind) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = m.find(n);
    if (it != m.end()) return it->second;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = nullptr;
    std::vector<double> re(static_cast<std::size_t>(n) * 2 + 2);
    std::vector<std::complex<double>> cx(static_cast<std::size_t>(n) + 1);
    auto* c = reinterpret_cast<fftw_complex*>(cx.data());
    if (kind == 0) {
      p = fftw_plan_dft_r2c_1d(n, re.data(), c, flags);
    } else if (kind == 1) {
      p = fftw_plan_dft_c2r_1d(n, c, re.data(), flags);
    } else {
      std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
      p = fftw_plan_dft_1d(n, c, reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, flags);
    }
    if (p == nullptr) throw NumericalFailure("FFTW could not create a plan");
    m.emplace(n, p);
    return p;
  }

  std::mutex mu_;
  std::map<int, fftw_plan> r2c_, c2r_, c2c_;
};

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace detail

// Forward complex DFT, unnormalised: out[k] = sum_j in[j] exp(-2 pi i jk/n).
inline void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  const int n = static_cast<int>(in.size());
  fftw_plan p = detail::PlanCache::instance().c2c_forward(n);
  // FFTW never writes to the input of an out-of-place c2c transform.
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

// Full linear convolution, length a.size() + b.size() - 1.
inline std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t len = a.size() + b.size() - 1;
  if (a.size() * b.size() <= 4096) {
    std::vector<double> out(len, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
  }
  const std::size_t n = detail::next_pow2(len);
  const int ni = static_cast<int>(n);
  auto& cache = detail::PlanCache::instance();
  std::vector<double> ra(n, 0.0), rb(n, 0.0);
  std::copy(a.begin(), a.end(), ra.begin());
  std::copy(b.begin(), b.end(), rb.begin());
  std::vector<std::complex<double>> fa(n / 2 + 1), fb(n / 2 + 1);
  fftw_execute_dft_r2c(cache.r2c(ni), ra.data(), reinterpret_cast<fftw_complex*>(fa.data()));
  fftw_execute_dft_r2c(cache.r2c(ni), rb.data(), reinterpret_cast<fftw_complex*>(fb.data()));
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  fftw_execute_dft_c2r(cache.c2r(ni), reinterpret_cast<fftw_complex*>(fa.data()), ra.data());
  const double scale = 1.0 / static_cast<double>(n);
  std::vector<double> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = ra[i] * scale;
  return out;
}

// out[i] = sum_j a[j] * k[j - i + shift] for i in [0, count), with k taken
// as zero outside its range.
inline std::vector<double> correlate(std::span<const double> a, std::span<const double> k,
                                     std::size_t count, std::size_t shift) {
  std::vector<double> rev(k.rbegin(), k.rend());
  const std::vector<double> c = convolve(a, rev);
  std::vector<double> out(count, 0.0);
  const long long base = static_cast<long long>(k.size()) - 1 - static_cast<long long>(shift);
  for (std::size_t i = 0; i < count; ++i) {
    const long long q = base + static_cast<long long>(i);
    if (q >= 0 && q < static_cast<long long>(c.size())) out[i] = c[static_cast<std::size_t>(q)];
  }
  return out;
}

}  // namespace fracnoise::fft
