// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fracnoise {

// Validation problems (bad parameters, malformed input) surface as
// std::invalid_argument or std::domain_error. A computation that ran but
// could not produce a trustworthy finite answer throws NumericalFailure.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

inline void require_domain(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

inline void require_finite(double x, const std::string& what) {
  if (!std::isfinite(x)) throw std::invalid_argument(what + " must be finite");
}

// Result of a norm evaluation that may legitimately diverge.
struct NormResult {
  double value = 0.0;
  bool finite = true;

  static NormResult divergent() { return {std::numeric_limits<double>::infinity(), false}; }
  explicit operator bool() const { return finite; }
};

}  // namespace fracnoise
