// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fracnoise/fbm.hpp"
#include "fracnoise/frac_calc.hpp"
#include "fracnoise/io.hpp"
#include "fracnoise/kernels.hpp"
#include "fracnoise/mittag_leffler.hpp"
#include "fracnoise/resolvent.hpp"
#include "fracnoise/spectral_model.hpp"
#include "fracnoise/spectral_sim.hpp"

// Acceptance suite: fifteen numbered checks, each reducing to one pass/fail
// verdict plus the metrics behind it. Reports carry no timing information so
// that two runs with the same seed serialize to the same bytes.
namespace fracnoise::acceptance {

using io::Json;

struct Options {
  std::uint64_t seed = 42;
  unsigned workers = 1;
};

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  Json metrics = Json::object();
};

inline Result started(int id, std::string name) {
  Result r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

inline Json to_json(const Result& r) {
  Json j;
  j["id"] = r.id;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["summary"] = r.summary;
  j["metrics"] = r.metrics;
  return j;
}

namespace detail {

inline std::string fmt(double x) { return io::format_double(x); }

inline double max_of(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  return m;
}

// Fixed configuration of the stochastic-PDE checks.
inline SpectralModel example_model(std::size_t modes) { return SpectralModel::example_family(1, 2.0, modes); }
inline Dynamics tempered_dynamics() { return Dynamics::with_kernel(KernelSpec::tempered(0.5, 1.0)); }

}  // namespace detail

// ---------------------------------------------------------------------------

inline Result indicator_law(const Options&) {
  Result r = started(1, "lambda_h_indicator_law");
  double worst = 0.0;
  Json cases = Json::array();
  for (double H : {0.25, 0.4, 0.5, 0.6, 0.75})
    for (double t : {0.5, 1.0, 2.0}) {
      const auto n = lambda_h_norm(SampledFunction::indicator(0.0, t, t / 16.0), HurstParameter(H));
      const double rel = n.finite ? std::abs(n.value * n.value / std::pow(t, 2.0 * H) - 1.0)
                                  : std::numeric_limits<double>::infinity();
      worst = std::max(worst, rel);
      cases.push_back({{"H", H}, {"t", t}, {"norm_squared", n.value * n.value}, {"rel_error", rel}});
    }
  r.pass = worst < 0.01;
  r.metrics = {{"tolerance", 0.01}, {"max_rel_error", worst}, {"cases", cases}};
  r.summary = "max rel error " + detail::fmt(worst) + " over 15 cases";
  return r;
}

inline Result marchaud_round_trip(const Options&) {
  Result r = started(2, "marchaud_round_trip");
  const double h = 1e-3;
  const auto hat = SampledFunction::from_midpoints([](double x) { return 1.0 - std::abs(x - 1.0); }, 0.0, 2000, h);
  const auto ind = SampledFunction::indicator(0.0, 1.0, h);
  double worst = 0.0;
  Json rows = Json::array();
  for (int i = 1; i <= 9; ++i) {
    const double a = 0.1 * i;
    for (const auto* f : {&ind, &hat}) {
      const auto g = marchaud_derivative(fractional_integral(*f, FracOrder(a)), FracOrder(a));
      double err = 0.0;
      for (std::size_t k = 0; k < g.size(); ++k) err = std::max(err, std::abs(g[k] - (*f)(g.node(k) + 0.5 * h)));
      worst = std::max(worst, err);
      rows.push_back({{"alpha", a}, {"f", f == &ind ? "indicator" : "hat"}, {"max_abs_error", err}});
    }
  }
  r.pass = worst < 1e-3;
  r.metrics = {{"step", h}, {"tolerance", 1e-3}, {"max_abs_error", worst}, {"cases", rows}};
  r.summary = "max |D(I f) - f| = " + detail::fmt(worst);
  return r;
}

inline Result fbm_law(const Options& o) {
  Result r = started(3, "fbm_covariance");
  constexpr std::size_t paths = 10000, points = 64;
  const double step = 1.0 / points;
  const double Hs[] = {0.25, 0.5, 0.75};
  bool pass = true;
  Json per_h = Json::array();
  for (std::size_t h = 0; h < 3; ++h) {
    const HurstParameter H(Hs[h]);
    const auto ens = sample_fbm(H, points, step, paths, SeedSpec{o.seed}, h, o.workers);
    double worst_z = 0.0;
    std::size_t outside = 0, entries = 0;
    for (std::size_t i = 1; i <= points; ++i)
      for (std::size_t j = i; j <= points; ++j) {
        double s = 0.0, s2 = 0.0;
        for (const auto& p : ens) {
          const double x = p.values[i] * p.values[j];
          s += x;
          s2 += x * x;
        }
        const double n = static_cast<double>(paths);
        const double mean = s / n;
        const double se = std::sqrt(std::max(s2 / n - mean * mean, 0.0) / (n - 1.0));
        const double z = std::abs(mean - fbm_covariance(i * step, j * step, H)) / se;
        worst_z = std::max(worst_z, z);
        outside += z > 3.0;
        ++entries;
      }
    pass = pass && outside == 0;
    // count a sampler exact in law would produce if the entries were independent
    const double chance = static_cast<double>(entries) * std::erfc(3.0 / std::sqrt(2.0));
    per_h.push_back({{"H", Hs[h]}, {"entries", entries}, {"outside_3se", outside}, {"expected_by_chance", chance},
                     {"max_z", worst_z}});
  }
  r.pass = pass;
  r.metrics = {{"paths", paths}, {"points", points}, {"per_H", per_h}};
  std::string s = "entries beyond 3 se:";
  for (const auto& e : per_h) s += " " + std::to_string(e["outside_3se"].get<std::size_t>());
  r.summary = s;
  return r;
}

inline Result isometry(const Options& o) {
  Result r = started(4, "wiener_isometry");
  constexpr std::size_t paths = 10000, cells = 64;
  const double step = 1.0 / 32.0;
  const double Hs[] = {0.25, 0.5, 0.75};
  double worst_z = 0.0;
  Json rows = Json::array();
  for (std::size_t h = 0; h < 3; ++h) {
    const HurstParameter H(Hs[h]);
    const auto ens = sample_fbm(H, cells, step, paths, SeedSpec{o.seed}, 100 + h, o.workers);
    Philox4x32 eng = SeedSpec{o.seed}.engine(200 + h, 0);
    std::normal_distribution<double> z;
    std::uniform_int_distribution<std::size_t> cut(0, cells / 2);
    auto draw = [&] {
      const std::size_t a = cut(eng), len = 8 + cut(eng);
      std::vector<double> v(std::min(len, cells - a));
      for (auto& x : v) x = z(eng);
      return SampledFunction(step, a * step, std::move(v));
    };
    for (int pair = 0; pair < 5; ++pair) {
      const auto f = draw(), g = draw();
      std::vector<double> prod(paths);
      for (std::size_t k = 0; k < paths; ++k) prod[k] = wiener_integral(f, ens[k]) * wiener_integral(g, ens[k]);
      const McEstimate est = mc_estimate(prod);
      const double exact = lambda_h_inner(f, g, H).value;
      const double zs = std::abs(est.mean - exact) / est.stderr_;
      worst_z = std::max(worst_z, zs);
      rows.push_back({{"H", Hs[h]}, {"pair", pair}, {"mc", est.mean}, {"stderr", est.stderr_}, {"exact", exact}, {"z", zs}});
    }
  }
  r.pass = worst_z <= 3.0;
  r.metrics = {{"paths", paths}, {"max_z", worst_z}, {"pairs", rows}};
  r.summary = "max |mc - inner| / se = " + detail::fmt(worst_z);
  return r;
}

inline Result resolvent_oracles(const Options&) {
  Result r = started(5, "resolvent_oracles");
  const double h = 1e-3, T = 2.0;
  double worst = 0.0;
  Json rows = Json::array();
  for (double a : {0.3, 0.7}) {
    const auto s = solve_scalar_resolvent(KernelSpec::riemann_liouville(a), 1.0, h, T);
    double e = 0.0;
    for (std::size_t j = 0; j < s.values.size(); ++j)
      e = std::max(e, std::abs(s.values[j] - mittag_leffler(a + 1.0, 1.0, -std::pow(s.grid.nodes[j], a + 1.0))));
    worst = std::max(worst, e);
    rows.push_back({{"case", "s_n"}, {"kernel_order", a}, {"mu", 1.0}, {"max_abs_error", e}});
  }
  for (double a : {0.5, 1.0, 1.5})
    for (double b : {0.75, 1.0, 1.5}) {
      const double e = fundamental_solution(a, b, 4.0, h, T).max_discrepancy();
      worst = std::max(worst, e);
      rows.push_back({{"case", "r_n"}, {"alpha", a}, {"beta", b}, {"mu", 4.0}, {"max_abs_error", e}});
    }
  r.pass = worst < 1e-4;
  r.metrics = {{"step", h}, {"horizon", T}, {"tolerance", 1e-4}, {"max_abs_error", worst}, {"cases", rows}};
  r.summary = "max abs error " + detail::fmt(worst);
  return r;
}

inline Result alpha2_closed_form(const Options&) {
  Result r = started(6, "alpha2_closed_form");
  double worst = 0.0;
  Json rows = Json::array();
  for (double b : {0.75, 1.0, 1.5, 2.0, 2.5})
    for (double mu : {1.0, 100.0}) {
      const double e = fundamental_solution_alpha2(b, mu, 1e-3, 2.0).max_discrepancy();
      worst = std::max(worst, e);
      rows.push_back({{"beta", b}, {"mu", mu}, {"max_abs_error", e}});
    }
  r.pass = worst < 1e-6;
  r.metrics = {{"tolerance", 1e-6}, {"max_abs_error", worst}, {"cases", rows}};
  r.summary = "max abs error " + detail::fmt(worst);
  return r;
}

inline Result rho_values(const Options&) {
  Result r = started(7, "parabolicity_index");
  double worst = 0.0;
  Json rows = Json::array();
  auto check = [&](const KernelSpec& k, const std::string& name, double want) {
    const double got = rho(k).value;
    worst = std::max(worst, std::abs(got - want));
    rows.push_back({{"kernel", name}, {"alpha", k.alpha}, {"rho", got}, {"expected", want}});
  };
  for (double a : {0.25, 0.5, 0.9}) {
    check(KernelSpec::riemann_liouville(a), "riemann_liouville", 1.0 + a);
    check(KernelSpec::tempered(a, 1.0), "tempered", 1.0 + a);
  }
  check(KernelSpec::exponential(1.0), "exponential", 2.0);
  r.pass = worst < 1e-3;
  r.metrics = {{"tolerance", 1e-3}, {"max_abs_error", worst}, {"cases", rows}};
  r.summary = "max |rho - expected| = " + detail::fmt(worst);
  return r;
}

inline Result resolvent_l1_scaling(const Options& o) {
  Result r = started(8, "resolvent_l1_scaling");
  ScalingOptions lo;
  lo.workers = o.workers;
  const auto rep = verify_resolvent_scaling(KernelSpec::tempered(0.5, 1.0), {1.0, 10.0, 100.0, 1000.0, 10000.0}, 40.0, lo);
  const double target = -1.0 / rep.rho;
  Json rows = Json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"mu", row.mu}, {"l1", row.l1}, {"sup_abs", row.sup_abs}, {"tail_fraction", row.tail_fraction}});
  r.pass = rep.l1_ok;
  r.metrics = {{"slope", rep.slope_l1},      {"target", target},
               {"tolerance", 0.05},          {"rel_deviation", std::abs(rep.slope_l1 / target - 1.0)},
               {"bound", rep.bound},         {"ratio_sup", rep.ratio_sup},
               {"grid_stable", rep.grid_stable}, {"rows", rows}};
  r.summary = "slope " + detail::fmt(rep.slope_l1) + " vs " + detail::fmt(target);
  return r;
}

inline Result fundamental_norm_scaling(const Options&) {
  Result r = started(9, "fundamental_norm_scaling");
  const double alpha = 1.0, beta = 0.9, H = 0.75, theta = 0.1;
  std::vector<double> mus, sq;
  for (double mu : {1.0, 4.0, 16.0, 64.0, 256.0}) {
    const auto n = rn_hdot_norm(alpha, beta, mu, H, theta);
    mus.push_back(mu);
    sq.push_back(n.value * n.value);
  }
  const double slope = fit_loglog(mus, sq).slope;
  const double target = 2.0 * (1.0 - beta + theta - H) / alpha;
  const bool slope_ok = std::abs(slope - target) <= 0.02 * std::abs(target);

  // Finiteness against 1 - H + q < beta < 1 - H + q + alpha, q = theta, on a
  // grid and at both window ends from either side; q = 0 and q = 0.1.
  std::size_t mismatches = 0, probes = 0;
  auto probe = [&](double b, double h, double q) {
    const bool want = b > 1.0 - h + q && b < 1.0 - h + q + alpha;
    mismatches += rn_hdot_norm(alpha, b, 1.0, h, q).finite != want;
    ++probes;
  };
  for (double q : {0.0, theta}) {
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) probe(0.07 + 0.2 * i, 0.05 + 0.1 * j, q);
    for (int j = 0; j < 10; ++j) {
      const double h = 0.05 + 0.1 * j;
      for (double edge : {1.0 - h + q, 1.0 - h + q + alpha})
        for (double d : {-1e-9, 1e-9}) probe(edge + d, h, q);
    }
  }
  r.pass = slope_ok && mismatches == 0;
  r.metrics = {{"slope", slope}, {"target", target}, {"tolerance", 0.02}, {"slope_ok", slope_ok},
               {"window_probes", probes}, {"window_mismatches", mismatches}};
  r.summary = "slope " + detail::fmt(slope) + " vs " + detail::fmt(target) + ", window mismatches " +
              std::to_string(mismatches);
  return r;
}

inline Result shift_identity(const Options&) {
  Result r = started(10, "time_reversal_shift_invariance");
  const double h = 1.0 / 64.0;
  const auto s = solve_scalar_resolvent(KernelSpec::tempered(0.5, 1.0), 4.0, h, 4.0);
  const auto f = s.right_staircase(256);
  double worst = 0.0;
  Json rows = Json::array();
  for (double H : {0.3, 0.75}) {
    std::vector<double> norms;
    for (double t : {0.0, 1.0, 2.0, 5.0}) {
      const auto n = hdot_norm(time_reversal_shift(f, t), 0.5 - H);
      norms.push_back(n.value);
      rows.push_back({{"H", H}, {"t", t}, {"norm", n.value}});
    }
    const double lo = *std::min_element(norms.begin(), norms.end());
    worst = std::max(worst, detail::max_of(norms) / lo - 1.0);
  }
  r.pass = worst < 0.005;
  r.metrics = {{"tolerance", 0.005}, {"max_rel_spread", worst}, {"cases", rows}};
  r.summary = "max relative spread " + detail::fmt(worst);
  return r;
}

inline Result variance_cross_check(const Options& o) {
  Result r = started(11, "variance_cross_check");
  constexpr std::size_t modes = 50, replicates = 2000;
  const double step = 1.0 / 128.0, T = 2.0;
  const auto model = detail::example_model(modes);
  const auto dyn = detail::tempered_dynamics();
  SimulationOptions so;
  so.stride = 64;
  so.workers = o.workers;
  so.table.workers = o.workers;
  double worst_z = 0.0;
  Json rows = Json::array();
  for (double H : {0.3, 0.5, 0.75}) {
    const auto e = simulate_solution(model, dyn, H, T, step, modes, replicates, o.seed, so);
    for (std::size_t q : {1, 2, 4}) {
      const double t = e.time(q);
      const McEstimate mc = mc_variance(e, q);
      const double exact = exact_variance(e, q, o.workers);
      const double z = (mc.mean - exact) / mc.stderr_;
      worst_z = std::max(worst_z, std::abs(z));
      rows.push_back({{"H", H}, {"t", t}, {"mc", mc.mean}, {"stderr", mc.stderr_}, {"spectral", exact}, {"z", z}});
    }
  }
  r.pass = worst_z <= 3.0;
  r.metrics = {{"modes", modes}, {"replicates", replicates}, {"step", step}, {"max_abs_z", worst_z}, {"cases", rows}};
  r.summary = "max |mc - spectral| / se = " + detail::fmt(worst_z);
  return r;
}

inline Result trace_bound(const Options& o) {
  Result r = started(12, "trace_bound");
  constexpr std::size_t modes = 50;
  const auto model = detail::example_model(modes);
  const auto dyn = detail::tempered_dynamics();
  VarianceOptions vo;
  vo.step = 1.0 / 128.0;
  vo.table.workers = o.workers;
  bool pass = true;
  double worst = 0.0;
  Json rows = Json::array();
  for (double H : {0.3, 0.5, 0.75}) {
    const auto rep = check_trace_bound(model, dyn, {0.5, 1.0, 2.0, 4.0}, H, modes, vo);
    pass = pass && rep.bounded;
    worst = std::max(worst, rep.variation);
    Json ratios = Json::array();
    for (const auto& p : rep.points) ratios.push_back({{"t", p.t}, {"trace", p.trace}, {"bound", p.bound}, {"ratio", p.ratio}});
    rows.push_back({{"H", H}, {"variation", rep.variation}, {"ratio_max", rep.ratio_max}, {"points", ratios}});
  }
  r.pass = pass;
  r.metrics = {{"modes", modes}, {"limit", 2.0}, {"max_variation", worst}, {"cases", rows}};
  r.summary = "max ratio variation " + detail::fmt(worst);
  return r;
}

inline Result holder_slopes(const Options& o) {
  Result r = started(13, "holder_slopes");
  constexpr std::size_t modes = 20, replicates = 400;
  const double H = 0.75, theta = 0.9, step = 1.0 / 256.0, T = 2.0;
  const auto model = detail::example_model(modes);
  const auto dyn = detail::tempered_dynamics();
  const auto cond = kernel_series_conditions(SpectralModel::example_family(1, 2.0, 2000), rho_closed_form(dyn.kernel), H,
                                             theta, 2000);
  const bool conditions_hold = cond.existence.convergent && cond.time.convergent && cond.space.convergent;

  SimulationOptions so;
  so.workers = o.workers;
  so.table.workers = o.workers;
  const auto e = simulate_solution(model, dyn, H, T, step, modes, replicates, o.seed, so);
  StructureOptions st;
  st.workers = o.workers;
  const auto time_sf = structure_function_time(e, {4, 6, 9, 13, 19, 28, 40}, st);
  const double time_target = 2.0 * theta * H - 0.1;

  const double space_target = 2.0 * theta - 0.1;
  double space_min = std::numeric_limits<double>::infinity();
  Json space = Json::array();
  for (double x0 : {0.5, 1.0}) {
    std::vector<XiPair> pairs;
    for (double d = 0.05; d <= 0.5 + 1e-12; d *= 1.3) pairs.push_back({x0, x0 + d});
    const auto sf = structure_function_space(e, pairs, e.points() - 1, 0.0, o.workers);
    space_min = std::min(space_min, sf.slope);
    space.push_back({{"x0", x0}, {"slope", sf.slope}, {"slope_exact", sf.slope_exact}, {"pairs", pairs.size()}});
  }
  r.pass = conditions_hold && time_sf.slope >= time_target && space_min >= space_target;
  r.metrics = {{"H", H},
               {"theta", theta},
               {"series_conditions_hold", conditions_hold},
               {"time_slope", time_sf.slope},
               {"time_slope_exact", time_sf.slope_exact},
               {"time_target", time_target},
               {"space", space},
               {"space_slope_min", space_min},
               {"space_target", space_target}};
  r.summary = "time slope " + detail::fmt(time_sf.slope) + " (>= " + detail::fmt(time_target) + "), space slope " +
              detail::fmt(space_min) + " (>= " + detail::fmt(space_target) + ")";
  return r;
}

inline Result condition_consistency(const Options&) {
  Result r = started(14, "condition_consistency");
  const double l = 2.0, alpha = 1.0, theta = 0.2;
  const int m = 1;
  constexpr std::size_t modes = 400;
  const auto model = SpectralModel::example_family(m, l, modes);
  std::size_t mismatches = 0;
  Json grid = Json::array();
  const double pts[][2] = {{0.9, 0.75}, {0.5, 0.6}, {0.3, 0.4}, {1.2, 0.3}, {0.15, 0.9}};
  for (const auto& p : pts) {
    const double beta = p[0], H = p[1];
    const auto s = sigma_conditions(model, alpha, beta, H, theta, modes);
    const auto c = example_conditions(l, m, alpha, beta, H, theta);
    const bool ok = s.sigma1.convergent == c.existence.holds() && s.sigma2.convergent == c.time.holds() &&
                    s.sigma3.convergent == c.space.holds();
    mismatches += !ok;
    grid.push_back({{"beta", beta},
                    {"H", H},
                    {"numeric", {s.sigma1.convergent, s.sigma2.convergent, s.sigma3.convergent}},
                    {"closed_form", {c.existence.holds(), c.time.holds(), c.space.holds()}}});
  }
  std::size_t alpha2_mismatches = 0, alpha2_cases = 0;
  for (int mm : {1, 2, 3})
    for (double ll : {1.1, 1.5, 2.5})
      for (double beta : {0.6, 0.8, 1.0, 1.4, 2.5}) {
        const double p = ll + 2.0 * mm * (beta - 1.0);
        if (std::abs(p - 1.0) < 1e-9) continue;
        const auto rep = alpha2_local_condition(SpectralModel::example_family(mm, ll, 500), beta, 500);
        alpha2_mismatches += rep.convergent != (p > 1.0);
        ++alpha2_cases;
      }
  r.pass = mismatches == 0 && alpha2_mismatches == 0;
  r.metrics = {{"sigma_grid", grid},
               {"sigma_mismatches", mismatches},
               {"alpha2_cases", alpha2_cases},
               {"alpha2_mismatches", alpha2_mismatches}};
  r.summary = "sigma mismatches " + std::to_string(mismatches) + ", alpha=2 mismatches " +
              std::to_string(alpha2_mismatches) + " of " + std::to_string(alpha2_cases);
  return r;
}

// ---------------------------------------------------------------------------

struct Entry {
  int id;
  const char* name;
  std::function<Result(const Options&)> run;
};

inline const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {1, "lambda_h_indicator_law", indicator_law},
      {2, "marchaud_round_trip", marchaud_round_trip},
      {3, "fbm_covariance", fbm_law},
      {4, "wiener_isometry", isometry},
      {5, "resolvent_oracles", resolvent_oracles},
      {6, "alpha2_closed_form", alpha2_closed_form},
      {7, "parabolicity_index", rho_values},
      {8, "resolvent_l1_scaling", resolvent_l1_scaling},
      {9, "fundamental_norm_scaling", fundamental_norm_scaling},
      {10, "time_reversal_shift_invariance", shift_identity},
      {11, "variance_cross_check", variance_cross_check},
      {12, "trace_bound", trace_bound},
      {13, "holder_slopes", holder_slopes},
      {14, "condition_consistency", condition_consistency},
  };
  return r;
}

constexpr int determinism_id = 15;

// Serialized metrics of criteria 1-14, the object compared byte for byte.
inline std::string fingerprint(const std::vector<Result>& results) {
  Json a = Json::array();
  for (const auto& r : results)
    if (r.id != determinism_id) a.push_back(to_json(r));
  return io::dump(a, -1);
}

// Reruns every criterion in `ids` other than 15 with a different worker count
// and compares the serialized results with `first`.
inline Result determinism(const Options& o, const std::vector<Result>& first, const std::vector<int>& ids,
                          const std::function<void(const Result&)>& progress = {}) {
  Result r = started(determinism_id, "determinism");
  Options other = o;
  other.workers = o.workers == 8 ? 1 : 8;
  std::vector<Result> second;
  for (const auto& e : registry())
    if (std::find(ids.begin(), ids.end(), e.id) != ids.end()) {
      second.push_back(e.run(other));
      if (progress) progress(second.back());
    }
  const std::string a = fingerprint(first), b = fingerprint(second);
  std::size_t differing = 0;
  for (std::size_t i = 0; i < std::min(first.size(), second.size()); ++i)
    differing += io::dump(to_json(first[i]), -1) != io::dump(to_json(second[i]), -1);
  r.pass = a == b;
  const unsigned lo = std::min(o.workers, other.workers), hi = std::max(o.workers, other.workers);
  r.metrics = {{"workers", {lo, hi}},
               {"criteria_compared", second.size()},
               {"criteria_differing", differing},
               {"bytes", a.size()}};
  r.summary = std::string(r.pass ? "identical" : "different") + " reports at workers " + std::to_string(lo) + " and " +
              std::to_string(hi);
  return r;
}

inline std::vector<int> all_ids() {
  std::vector<int> v;
  for (int i = 1; i <= determinism_id; ++i) v.push_back(i);
  return v;
}

// Runs the selected criteria in increasing id order. `progress` sees each
// result as soon as it is available.
inline std::vector<Result> run(std::vector<int> ids, const Options& o,
                               const std::function<void(const Result&)>& progress = {}) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (int id : ids) require(id >= 1 && id <= determinism_id, "unknown criterion " + std::to_string(id));
  std::vector<Result> out;
  for (const auto& e : registry())
    if (std::find(ids.begin(), ids.end(), e.id) != ids.end()) {
      out.push_back(e.run(o));
      if (progress) progress(out.back());
    }
  if (std::find(ids.begin(), ids.end(), determinism_id) != ids.end()) {
    std::vector<int> rest(ids.begin(), ids.end() - 1);
    out.push_back(determinism(o, out, rest));
    if (progress) progress(out.back());
  }
  return out;
}

inline Json report(const std::vector<Result>& results, const Options& o) {
  Json j;
  j["seed"] = o.seed;
  bool all = !results.empty();
  Json arr = Json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    arr.push_back(to_json(r));
  }
  j["criteria"] = arr;
  j["passed"] = static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](const Result& r) { return r.pass; }));
  j["total"] = results.size();
  j["all_pass"] = all;
  return j;
}

}  // namespace fracnoise::acceptance
