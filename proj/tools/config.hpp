// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracnoise/io.hpp"
#include "fracnoise/kernels.hpp"
#include "fracnoise/spectral_model.hpp"
#include "fracnoise/spectral_sim.hpp"

namespace fracnoise::cli {

using io::Json;

// Bad input from the user (config file, flag, range). Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what) {}
};

// JSON pointer "/a/b" printed as "a.b" in messages.
inline std::string field_name(const std::string& pointer) {
  std::string s = pointer.substr(pointer.empty() ? 0 : 1);
  for (auto& c : s)
    if (c == '/') c = '.';
  return s;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
}

// Recursive merge: objects merge key by key, everything else is replaced.
inline void merge_into(Json& base, const Json& over) {
  if (!base.is_object() || !over.is_object()) {
    base = over;
    return;
  }
  for (auto it = over.begin(); it != over.end(); ++it) {
    if (base.contains(it.key()))
      merge_into(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
}

// Flag text to JSON: numbers, booleans and comma lists of numbers are typed,
// anything else stays a string.
inline Json flag_value(const std::string& text, bool list) {
  auto scalar = [](const std::string& s) -> Json {
    if (s == "true") return true;
    if (s == "false") return false;
    std::size_t used = 0;
    try {
      const double x = std::stod(s, &used);
      if (used == s.size()) {
        if (s.find_first_of(".eEnN") == std::string::npos) {
          const long long i = std::stoll(s);
          return i;
        }
        return x;
      }
    } catch (const std::exception&) {
    }
    return s;
  };
  if (!list) return scalar(text);
  Json a = Json::array();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) a.push_back(scalar(item));
  return a;
}

class Config {
 public:
  explicit Config(Json j) : j_(std::move(j)) {}

  const Json& json() const { return j_; }
  Json& json() { return j_; }

  bool has(const std::string& ptr) const { return j_.contains(Json::json_pointer(ptr)); }

  const Json& at(const std::string& ptr) const {
    if (!has(ptr)) throw ConfigError(field_name(ptr), "missing");
    return j_.at(Json::json_pointer(ptr));
  }

  double number(const std::string& ptr) const {
    const Json& v = at(ptr);
    if (!v.is_number()) throw ConfigError(field_name(ptr), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(field_name(ptr), "must be finite");
    return x;
  }

  double number_in(const std::string& ptr, double lo, double hi, bool lo_open, bool hi_open,
                   const std::string& range) const {
    const double x = number(ptr);
    const bool ok = (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
    if (!ok) throw ConfigError(field_name(ptr), "must lie in " + range);
    return x;
  }

  double positive(const std::string& ptr) const {
    const double x = number(ptr);
    if (!(x > 0.0)) throw ConfigError(field_name(ptr), "must be positive");
    return x;
  }

  std::int64_t integer(const std::string& ptr, std::int64_t lo) const {
    const Json& v = at(ptr);
    if (!v.is_number_integer()) throw ConfigError(field_name(ptr), "expected an integer");
    const auto i = v.get<std::int64_t>();
    if (i < lo) throw ConfigError(field_name(ptr), "must be at least " + std::to_string(lo));
    return i;
  }

  std::uint64_t seed(const std::string& ptr) const {
    const Json& v = at(ptr);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw ConfigError(field_name(ptr), "expected a nonnegative integer");
    return v.get<std::uint64_t>();
  }

  std::string string(const std::string& ptr) const {
    const Json& v = at(ptr);
    if (!v.is_string()) throw ConfigError(field_name(ptr), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& ptr) const {
    const Json& v = at(ptr);
    if (!v.is_array() || v.empty()) throw ConfigError(field_name(ptr), "expected a nonempty array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number() || !std::isfinite(x.get<double>()))
        throw ConfigError(field_name(ptr), "expected finite numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

 private:
  Json j_;
};

// ---------------------------------------------------------------------------
// Typed views of the shared sections.

inline KernelSpec kernel_from(const Config& c, const std::string& base = "/dynamics/kernel") {
  const std::string fam = c.string(base + "/family");
  KernelSpec k;
  try {
    if (fam == "exponential") {
      k = KernelSpec::exponential(c.has(base + "/eta") ? c.number(base + "/eta") : 1.0);
    } else if (fam == "tempered") {
      k = KernelSpec::tempered(c.number(base + "/alpha"), c.has(base + "/eta") ? c.number(base + "/eta") : 1.0);
    } else if (fam == "riemann-liouville" || fam == "riemann_liouville") {
      k = KernelSpec::riemann_liouville(c.number(base + "/alpha"));
    } else {
      throw ConfigError(field_name(base + "/family"), "unknown kernel family '" + fam + "'");
    }
    if (c.has(base + "/scale")) k = k.scaled(c.positive(base + "/scale"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field_name(base), e.what());
  }
  if (k.family != KernelFamily::exponential && k.alpha > 1.0)
    throw ConfigError(field_name(base + "/alpha"), "must lie in (0, 1]");
  return k;
}

inline bool has_kernel(const Config& c) { return c.has("/dynamics/kernel"); }

inline Dynamics dynamics_from(const Config& c) {
  if (has_kernel(c)) return Dynamics::with_kernel(kernel_from(c));
  const double alpha = c.number_in("/dynamics/alpha", 0.0, 2.0, true, false, "(0, 2]");
  const double beta = c.positive("/dynamics/beta");
  if (alpha == 2.0 && !(beta > 0.5 && beta < 3.0))
    throw ConfigError("dynamics.beta", "must lie in (1/2, 3) when alpha = 2");
  return Dynamics::fractional(alpha, beta);
}

inline SpectralModel model_from(const Config& c) {
  const std::string fam = c.has("/model/family") ? c.string("/model/family") : "example";
  if (fam == "example") {
    const auto m = c.integer("/model/m", 1);
    const double l = c.number("/model/l");
    if (!(l > 1.0)) throw ConfigError("model.l", "must exceed 1");
    const auto N = c.integer("/model/N", 1);
    return SpectralModel::example_family(static_cast<int>(m), l, static_cast<std::size_t>(N));
  }
  if (fam == "tabulated") {
    auto mu = c.numbers("/model/mu");
    auto gamma = c.numbers("/model/gamma");
    try {
      SpectralModel s = SpectralModel::tabulated(std::move(mu), std::move(gamma));
      if (c.has("/model/N")) s = s.truncated(static_cast<std::size_t>(c.integer("/model/N", 1)));
      return s;
    } catch (const std::invalid_argument& e) {
      throw ConfigError("model", e.what());
    }
  }
  throw ConfigError("model.family", "expected 'example' or 'tabulated'");
}

inline double hurst_from(const Config& c) { return c.number_in("/H", 0.0, 1.0, true, true, "(0, 1)"); }

}  // namespace fracnoise::cli
