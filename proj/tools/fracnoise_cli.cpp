// Copyright 2026 The fracnoise developers.
// SPDX-License-Identifier: Apache-2.0
//
// fracnoise: command line front end.
//
// Effective configuration = subcommand defaults, then the --config document,
// then explicit flags (highest precedence). Exit codes: 0 success, 1 invalid
// input, 2 numerical failure, 3 `verify` ran but some criterion failed.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <boost/version.hpp>
#include <fftw3.h>
#include <gsl/gsl_version.h>

#include "config.hpp"
#include "fracnoise/acceptance.hpp"
#include "fracnoise/fracnoise.hpp"

namespace fs = std::filesystem;
using namespace fracnoise;
using namespace fracnoise::cli;

namespace {

constexpr int exit_ok = 0, exit_invalid = 1, exit_numerical = 2, exit_criteria = 3;
constexpr const char* output_env = "FRACNOISE_OUTPUT_DIR";

struct FlagSpec {
  std::string name;     // without leading dashes
  std::string pointer;  // JSON pointer, or "@alpha" resolved against the dynamics kind
  bool list = false;
  std::string help;
};

struct Subcommand {
  std::string name;
  std::string help;
  Json defaults;
  std::vector<FlagSpec> flags;
  std::function<int(const Config&, struct Context&)> run;
};

struct Context {
  fs::path out_dir;
  bool want_json = true, want_csv = true;
  unsigned workers = 1;
  std::vector<std::string> written;

  fs::path file(const std::string& name) const { return out_dir / name; }

  void write(const std::string& name, const std::string& text) {
    io::write_file(file(name).string(), text);
    written.push_back(name);
  }

  void write_json(const std::string& name, const Json& j) {
    if (want_json) write(name, io::dump(j) + "\n");
  }

  template <class F>
  void write_csv(const std::string& name, F&& body) {
    if (!want_csv) return;
    std::ostringstream os;
    io::CsvWriter w(os);
    body(w);
    write(name, os.str());
  }
};

void require_finite_output(double x, const std::string& what) {
  if (!std::isfinite(x)) throw NumericalFailure(what + " is not finite");
}

Json kernel_json(const KernelSpec& k) {
  return {{"family", to_string(k.family)}, {"alpha", k.alpha}, {"eta", k.eta}, {"scale", k.scale}};
}

Json dynamics_json(const Dynamics& d) {
  if (d.is_kernel()) return {{"kernel", kernel_json(d.kernel)}};
  return {{"alpha", d.alpha}, {"beta", d.beta}};
}

// ---------------------------------------------------------------------------

int run_rho(const Config& c, Context& ctx) {
  const KernelSpec k = kernel_from(c);
  const RhoReport r = rho(k);
  require_finite_output(r.value, "rho");
  ctx.write_json("rho.json", {{"kernel", kernel_json(k)},
                              {"rho", r.value},
                              {"closed_form", r.closed_form},
                              {"arg_sup_at", r.arg_sup_at},
                              {"parabolic", r.parabolic}});
  std::cout << io::format_double(r.value) << "\n";
  return exit_ok;
}

int run_resolvent(const Config& c, Context& ctx) {
  const KernelSpec k = kernel_from(c);
  const double mu = c.positive("/mu");
  const double step = c.positive("/grid/step"), horizon = c.positive("/grid/horizon");
  if (step > horizon) throw ConfigError("grid.step", "must not exceed grid.horizon");
  const auto s = solve_scalar_resolvent(k, mu, step, horizon);
  double sup = 0.0;
  for (double v : s.values) {
    require_finite_output(v, "resolvent sample");
    sup = std::max(sup, std::abs(v));
  }
  ctx.write_csv("resolvent.csv", [&](io::CsvWriter& w) {
    w.header({"t", "value"});
    for (std::size_t j = 0; j < s.values.size(); ++j) w.row(s.grid.nodes[j], s.values[j]);
  });
  Json out = {{"kernel", kernel_json(k)}, {"mu", mu}, {"step", step}, {"horizon", horizon},
              {"samples", s.values.size()}, {"sup_abs", sup}};
  std::string extra;
  if (c.has("/verify/mus")) {
    ScalingOptions o;
    o.workers = ctx.workers;
    const auto rep = verify_resolvent_scaling(k, c.numbers("/verify/mus"), c.has("/verify/horizon") ? c.positive("/verify/horizon") : 40.0, o);
    Json rows = Json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"mu", r.mu}, {"sup_abs", r.sup_abs}, {"dot_l1", r.dot_l1}, {"t_dot_l1", r.t_dot_l1},
                      {"l1", r.l1}, {"tail_fraction", r.tail_fraction}, {"tail_flag", r.tail_flag}});
    out["verification"] = {{"bound", rep.bound},
                           {"slope", rep.slope_l1},
                           {"slope_dot", rep.slope_dot},
                           {"slope_t_dot", rep.slope_t_dot},
                           {"target", -1.0 / rep.rho},
                           {"ratio_sup", rep.ratio_sup},
                           {"grid_stable", rep.grid_stable},
                           {"pass", rep.pass()},
                           {"rows", rows}};
    extra = ", L1 slope " + io::format_double(rep.slope_l1);
  }
  ctx.write_json("resolvent.json", out);
  std::cout << "resolvent: " << s.values.size() << " samples, sup |s| = " << io::format_double(sup) << extra << "\n";
  return exit_ok;
}

int run_fundamental(const Config& c, Context& ctx) {
  const double alpha = c.number_in("/dynamics/alpha", 0.0, 2.0, true, false, "(0, 2]");
  const double beta = c.positive("/dynamics/beta");
  const double mu = c.positive("/mu");
  const double step = c.positive("/grid/step"), horizon = c.positive("/grid/horizon");
  if (step > horizon) throw ConfigError("grid.step", "must not exceed grid.horizon");
  if (alpha == 2.0 && !(beta > 0.5 && beta < 3.0))
    throw ConfigError("dynamics.beta", "must lie in (1/2, 3) when alpha = 2");
  const auto f = alpha == 2.0 ? fundamental_solution_alpha2(beta, mu, step, horizon)
                              : fundamental_solution(alpha, beta, mu, step, horizon);
  for (double v : f.closed) require_finite_output(v, "fundamental solution sample");
  const double disc = f.max_discrepancy();
  ctx.write_csv("fundamental.csv", [&](io::CsvWriter& w) {
    w.header({"t", "value"});
    for (std::size_t i = 0; i < f.t.size(); ++i) w.row(f.t[i], f.closed[i]);
  });
  ctx.write_json("fundamental.json", {{"alpha", alpha},
                                      {"beta", beta},
                                      {"mu", mu},
                                      {"step", step},
                                      {"horizon", horizon},
                                      {"samples", f.t.size()},
                                      {"secondary_route", alpha == 2.0 ? "series" : "volterra"},
                                      {"max_discrepancy", disc}});
  std::cout << "fundamental: " << f.t.size() << " samples, route discrepancy " << io::format_double(disc) << "\n";
  return exit_ok;
}

int run_variance(const Config& c, Context& ctx) {
  const SpectralModel model = model_from(c);
  const Dynamics dyn = dynamics_from(c);
  const double H = hurst_from(c);
  const auto times = c.numbers("/times");
  for (double t : times)
    if (!(t >= 0.0)) throw ConfigError("times", "must be nonnegative");
  VarianceOptions o;
  o.step = c.positive("/grid/step");
  o.table.workers = ctx.workers;
  o.table_horizon = *std::max_element(times.begin(), times.end());
  const std::size_t N = model.modes();
  const std::size_t total = steps_for(o.table_horizon, o.step, "variance");
  std::shared_ptr<const ModeTable> table;
  if (total > 0) table = std::make_shared<const ModeTable>(mode_table(model, dyn, o.step, total, N, o.table));
  Json rows = Json::array();
  std::vector<VarianceReport> reps;
  for (double t : times) {
    const std::size_t j = steps_for(t, o.step, "variance");
    VarianceReport v;
    if (j == 0)
      v.terms.assign(N, 0.0);
    else
      v = variance_from_table(model, *table, j, HurstParameter(H), ctx.workers);
    require_finite_output(v.value, "variance");
    reps.push_back(v);
    rows.push_back({{"t", t}, {"variance", v.value}, {"tail_low", v.tail_low}, {"tail_high", v.tail_high}});
  }
  ctx.write_csv("variance.csv", [&](io::CsvWriter& w) {
    w.header({"t", "variance", "tail_low", "tail_high"});
    for (std::size_t i = 0; i < times.size(); ++i) w.row(times[i], reps[i].value, reps[i].tail_low, reps[i].tail_high);
  });
  ctx.write_json("variance.json", {{"modes", N}, {"H", H}, {"dynamics", dynamics_json(dyn)}, {"step", o.step},
                                   {"trace_bound_series", trace_bound_series(model, dyn, H, N)}, {"points", rows}});
  std::cout << "variance: " << times.size() << " times, E|u(" << io::format_double(times.back())
            << ")|^2 = " << io::format_double(reps.back().value) << "\n";
  return exit_ok;
}

SolutionEnsemble simulate_from(const Config& c, Context& ctx, std::size_t stride) {
  const SpectralModel model = model_from(c);
  const Dynamics dyn = dynamics_from(c);
  const double H = hurst_from(c);
  const double step = c.positive("/grid/step"), horizon = c.positive("/grid/horizon");
  const auto M = static_cast<std::size_t>(c.integer("/mc/replicates", 1));
  const std::uint64_t seed = c.seed("/mc/seed");
  SimulationOptions o;
  o.stride = stride;
  o.workers = ctx.workers;
  o.table.workers = ctx.workers;
  auto e = simulate_solution(model, dyn, H, horizon, step, model.modes(), M, seed, o);
  for (double v : e.values) require_finite_output(v, "simulated coefficient");
  return e;
}

int run_simulate(const Config& c, Context& ctx) {
  const auto stride = static_cast<std::size_t>(c.integer("/stride", 1));
  const SolutionEnsemble e = simulate_from(c, ctx, stride);
  const std::size_t P = e.points();
  Json pts = Json::array();
  for (std::size_t q = 1; q < P; ++q) {
    const McEstimate mc = mc_variance(e, q);
    pts.push_back({{"t", e.time(q)}, {"mc_variance", mc.mean}, {"stderr", mc.stderr_},
                   {"spectral_variance", exact_variance(e, q, ctx.workers)}});
  }
  ctx.write_csv("simulate_modes.csv", [&](io::CsvWriter& w) {
    w.header({"t", "value", "mode", "replicate"});
    for (std::size_t n = 1; n <= e.modes; ++n)
      for (std::size_t k = 0; k < e.replicates; ++k)
        for (std::size_t q = 0; q < P; ++q) w.row(e.time(q), e.X(n, k, q), n, k);
  });
  if (c.has("/xi")) {
    const auto xi = c.numbers("/xi");
    for (double x : xi)
      if (!(x >= 0.0 && x <= SpectralModel::domain_length)) throw ConfigError("xi", "points must lie in [0, pi]");
    const FieldSamples f = evaluate_field(e, xi);
    ctx.write_csv("simulate_field.csv", [&](io::CsvWriter& w) {
      w.header({"t", "xi", "value", "replicate"});
      for (std::size_t q = 0; q < f.times.size(); ++q)
        for (std::size_t i = 0; i < xi.size(); ++i)
          for (std::size_t k = 0; k < f.replicates; ++k) w.row(f.times[q], xi[i], f(q, xi[i], k), k);
    });
  }
  ctx.write_json("simulate.json", {{"modes", e.modes},
                                   {"replicates", e.replicates},
                                   {"H", e.hurst.value()},
                                   {"dynamics", dynamics_json(e.dynamics)},
                                   {"step", e.step},
                                   {"steps", e.steps},
                                   {"stride", e.stride},
                                   {"seed", e.seed},
                                   {"points", pts}});
  std::cout << "simulate: " << e.modes << " modes x " << e.replicates << " replicates x " << P << " times\n";
  return exit_ok;
}

Json structure_json(const StructureFunction& sf) {
  Json rows = Json::array();
  for (const auto& r : sf.rows) rows.push_back({{"lag", r.lag}, {"value", r.value}, {"stderr", r.stderr_}, {"exact", r.exact}});
  return {{"slope", sf.slope}, {"slope_exact", sf.slope_exact}, {"decades", sf.decades}, {"rows", rows}};
}

int run_holder(const Config& c, Context& ctx) {
  const SolutionEnsemble e = simulate_from(c, ctx, 1);
  const double H = e.hurst.value();
  std::vector<std::size_t> lags;
  for (double L : c.numbers("/lags")) {
    if (!(L >= 1.0) || L != std::floor(L)) throw ConfigError("lags", "must be positive integers (grid steps)");
    lags.push_back(static_cast<std::size_t>(L));
  }
  StructureOptions so;
  so.workers = ctx.workers;
  const auto tsf = structure_function_time(e, lags, so);
  const double xi0 = c.number_in("/space/xi0", 0.0, SpectralModel::domain_length, false, false, "[0, pi]");
  std::vector<XiPair> pairs;
  for (double d : c.numbers("/space/separations")) {
    if (!(d > 0.0) || xi0 + d > SpectralModel::domain_length)
      throw ConfigError("space.separations", "must be positive with xi0 + d <= pi");
    pairs.push_back({xi0, xi0 + d});
  }
  const auto ssf = structure_function_space(e, pairs, e.points() - 1, 0.0, ctx.workers);
  auto dump_sf = [&](const std::string& name, const StructureFunction& sf) {
    ctx.write_csv(name, [&](io::CsvWriter& w) {
      w.header({"lag", "value", "stderr"});
      for (const auto& r : sf.rows) w.row(r.lag, r.value, r.stderr_);
    });
  };
  dump_sf("holder_time.csv", tsf);
  dump_sf("holder_space.csv", ssf);
  Json out = {{"H", H}, {"time", structure_json(tsf)}, {"space", structure_json(ssf)}};
  if (c.has("/theta")) {
    const double theta = c.number_in("/theta", 0.0, 1.0, true, true, "(0, 1)");
    out["theta"] = theta;
    out["time_target"] = 2.0 * theta * H - 0.1;
    out["space_target"] = 2.0 * theta - 0.1;
    out["time_ok"] = tsf.slope >= 2.0 * theta * H - 0.1;
    out["space_ok"] = ssf.slope >= 2.0 * theta - 0.1;
  }
  ctx.write_json("holder.json", out);
  std::cout << "holder: time slope " << io::format_double(tsf.slope) << ", space slope "
            << io::format_double(ssf.slope) << "\n";
  return exit_ok;
}

Json series_json(const SeriesCondition& s) {
  Json j = {{"expression", s.expression}, {"mu_exponent", s.mu_exponent}, {"convergent", s.convergent},
            {"partial_sum", s.sum()},     {"tail_low", s.tail_low},       {"tail_high", s.tail_high}};
  if (s.analytic) j["p_exponent"] = s.p_exponent;
  return j;
}

Json example_json(const ExampleCondition& e) {
  return {{"holds", e.holds()}, {"window", e.window}, {"inequality", e.inequality}, {"threshold", e.threshold},
          {"numeric", e.numeric}};
}

int run_conditions(const Config& c, Context& ctx) {
  const SpectralModel model = model_from(c);
  const Dynamics dyn = dynamics_from(c);
  const double H = hurst_from(c);
  const double theta = c.number_in("/theta", 0.0, 1.0, false, false, "[0, 1]");
  const std::size_t N = model.modes();
  Json out;
  if (dyn.is_kernel()) {
    if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta", "must lie in (0, 1) for kernel dynamics");
    const auto k = kernel_series_conditions(model, rho_closed_form(dyn.kernel), H, theta, N);
    out = {{"existence", k.existence.convergent},
           {"time", k.time.convergent},
           {"space", k.space.convergent},
           {"holder_time_below", k.holder_time},
           {"holder_space_below", k.holder_space},
           {"series", {{"existence", series_json(k.existence)}, {"time", series_json(k.time)}, {"space", series_json(k.space)}}}};
  } else if (dyn.alpha == 2.0) {
    const auto a = alpha2_local_condition(model, dyn.beta, N);
    out = {{"local_existence", a.convergent},
           {"displayed_form", a.displayed_convergent},
           {"series", series_json(a.series)},
           {"displayed_series", series_json(a.displayed)},
           {"note", a.note}};
  } else {
    const auto s = sigma_conditions(model, dyn.alpha, dyn.beta, H, theta, N);
    auto sigma = [](const SigmaSeries& x) {
      return Json{{"convergent", x.convergent}, {"mu_exponent", x.mu_exponent}, {"partial_sum", x.sum()},
                  {"tail_low", x.tail_low}, {"tail_high", x.tail_high}};
    };
    out = {{"existence", s.sigma1.convergent}, {"time", s.sigma2.convergent}, {"space", s.sigma3.convergent}};
    out["sigma"] = {{"sigma1", sigma(s.sigma1)}, {"sigma2", sigma(s.sigma2)}, {"sigma3", sigma(s.sigma3)}};
    if (model.example) {
      const auto e = example_conditions(model.l, model.m, dyn.alpha, dyn.beta, H, theta);
      out["closed_form"] = {{"existence", example_json(e.existence)}, {"time", example_json(e.time)}, {"space", example_json(e.space)}};
    }
  }
  ctx.write_json("conditions.json", out);
  std::cout << io::dump(out) << "\n";
  return exit_ok;
}

std::vector<int> suite_ids(const Config& c) {
  const Json& s = c.at("/suite");
  if (s == "all" || s == Json::array({"all"})) return acceptance::all_ids();
  std::vector<int> ids;
  auto add = [&](const Json& v) {
    if (!v.is_number_integer() || v.get<int>() < 1 || v.get<int>() > acceptance::determinism_id)
      throw ConfigError("suite", "expected 'all' or criterion ids 1-15");
    ids.push_back(v.get<int>());
  };
  if (s.is_array())
    for (const auto& v : s) add(v);
  else
    add(s);
  return ids;
}

int run_verify(const Config& c, Context& ctx) {
  acceptance::Options o;
  o.seed = c.seed("/mc/seed");
  o.workers = ctx.workers;
  const auto ids = suite_ids(c);
  const auto results = acceptance::run(ids, o, [](const acceptance::Result& r) {
    std::printf("[%s] %2d %-32s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.summary.c_str());
    std::fflush(stdout);
  });
  const Json rep = acceptance::report(results, o);
  ctx.write("verify.json", io::dump(rep) + "\n");
  std::cout << "verify: " << rep["passed"].get<std::size_t>() << "/" << results.size() << " criteria pass\n";
  return rep["all_pass"].get<bool>() ? exit_ok : exit_criteria;
}

// ---------------------------------------------------------------------------

Json tempered_default() { return {{"kernel", {{"family", "tempered"}, {"alpha", 0.5}, {"eta", 1.0}}}}; }

std::vector<FlagSpec> model_flags() {
  return {{"model", "/model/family", false, "model family: example | tabulated"},
          {"m", "/model/m", false, "example model: mu_k = k^(2m)"},
          {"l", "/model/l", false, "example model: gamma_k = k^(-l)"},
          {"N", "/model/N", false, "number of modes"}};
}

std::vector<FlagSpec> dynamics_flags() {
  return {{"kernel", "/dynamics/kernel/family", false, "kernel family: exponential | tempered | riemann-liouville"},
          {"alpha", "@alpha", false, "kernel order, or alpha of the fractional problem"},
          {"eta", "/dynamics/kernel/eta", false, "kernel decay rate"},
          {"beta", "/dynamics/beta", false, "beta of the fractional problem"}};
}

template <class... V>
std::vector<FlagSpec> concat(V... v) {
  std::vector<FlagSpec> out;
  (out.insert(out.end(), v.begin(), v.end()), ...);
  return out;
}

std::vector<Subcommand> subcommands() {
  const std::vector<FlagSpec> kernel = {
      {"kernel", "/dynamics/kernel/family", false, "kernel family: exponential | tempered | riemann-liouville"},
      {"alpha", "/dynamics/kernel/alpha", false, "kernel order"},
      {"eta", "/dynamics/kernel/eta", false, "kernel decay rate"},
      {"scale", "/dynamics/kernel/scale", false, "time scale c of b(c t)"}};
  const std::vector<FlagSpec> sim = {{"H", "/H", false, "Hurst parameter"},
                                     {"step", "/grid/step", false, "time step"},
                                     {"horizon", "/grid/horizon", false, "final time"},
                                     {"replicates", "/mc/replicates", false, "Monte Carlo replicates"},
                                     {"seed", "/mc/seed", false, "master seed"}};
  const Json sim_defaults = {{"model", {{"family", "example"}, {"m", 1}, {"l", 2.0}, {"N", 20}}},
                             {"dynamics", tempered_default()},
                             {"H", 0.75},
                             {"grid", {{"step", 1.0 / 256.0}, {"horizon", 2.0}}},
                             {"mc", {{"replicates", 400}, {"seed", 42}}}};
  Json holder_defaults = sim_defaults;
  holder_defaults["lags"] = {4, 6, 9, 13, 19, 28, 40};
  holder_defaults["space"] = {{"xi0", 0.5}, {"separations", {0.05, 0.065, 0.0845, 0.10985, 0.142805, 0.1856465, 0.24134045, 0.313742585, 0.4078653605}}};
  Json simulate_defaults = sim_defaults;
  simulate_defaults["stride"] = 1;

  return {
      {"resolvent", "scalar resolvent s' + mu (b * s) = 0, s(0) = 1, as CSV (t, value)",
       {{"dynamics", tempered_default()}, {"mu", 1.0}, {"grid", {{"step", 1e-3}, {"horizon", 2.0}}}},
       concat(kernel, std::vector<FlagSpec>{{"mu", "/mu", false, "eigenvalue mu"},
                                            {"step", "/grid/step", false, "time step"},
                                            {"horizon", "/grid/horizon", false, "final time"},
                                            {"mus", "/verify/mus", true, "mu values for the L1 scaling check"}}),
       run_resolvent},
      {"fundamental", "fundamental solution r = t^(beta-1) E_{alpha,beta}(-mu t^alpha) as CSV (t, value)",
       {{"dynamics", {{"alpha", 1.0}, {"beta", 1.0}}}, {"mu", 1.0}, {"grid", {{"step", 1e-3}, {"horizon", 2.0}}}},
       {{"alpha", "/dynamics/alpha", false, "alpha in (0, 2]"},
        {"beta", "/dynamics/beta", false, "beta > 0"},
        {"mu", "/mu", false, "eigenvalue mu"},
        {"step", "/grid/step", false, "time step"},
        {"horizon", "/grid/horizon", false, "final time"}},
       run_fundamental},
      {"rho", "parabolicity index of a kernel", {{"dynamics", tempered_default()}}, kernel, run_rho},
      {"variance", "E|u(t)|^2 from the spectral formula",
       {{"model", {{"family", "example"}, {"m", 1}, {"l", 2.0}, {"N", 50}}},
        {"dynamics", tempered_default()},
        {"H", 0.75},
        {"times", {0.5, 1.0, 2.0}},
        {"grid", {{"step", 1.0 / 128.0}}}},
       concat(model_flags(), dynamics_flags(),
              std::vector<FlagSpec>{{"H", "/H", false, "Hurst parameter"},
                                    {"t", "/times", true, "evaluation times"},
                                    {"step", "/grid/step", false, "time step"}}),
       run_variance},
      {"simulate", "Monte Carlo ensemble of the modal coefficients", simulate_defaults,
       concat(model_flags(), dynamics_flags(), sim,
              std::vector<FlagSpec>{{"stride", "/stride", false, "keep every stride-th time"},
                                    {"xi", "/xi", true, "points in [0, pi] for field output"}}),
       run_simulate},
      {"holder", "temporal and spatial structure functions", holder_defaults,
       concat(model_flags(), dynamics_flags(), sim,
              std::vector<FlagSpec>{{"theta", "/theta", false, "regularity index for the slope targets"},
                                    {"lags", "/lags", true, "time lags in grid steps"},
                                    {"xi0", "/space/xi0", false, "base point of the spatial pairs"},
                                    {"separations", "/space/separations", true, "spatial separations"}}),
       run_holder},
      {"conditions", "series conditions for existence and regularity",
       {{"model", {{"family", "example"}, {"m", 1}, {"l", 2.0}, {"N", 2000}}},
        {"dynamics", {{"alpha", 1.0}, {"beta", 1.0}}},
        {"H", 0.75},
        {"theta", 0.2}},
       concat(model_flags(), dynamics_flags(),
              std::vector<FlagSpec>{{"H", "/H", false, "Hurst parameter"}, {"theta", "/theta", false, "regularity index"}}),
       run_conditions},
      {"verify", "run the acceptance suite", {{"suite", "all"}, {"mc", {{"seed", 42}}}},
       {{"suite", "/suite", true, "'all' or comma separated criterion ids"}, {"seed", "/mc/seed", false, "master seed"}},
       run_verify},
  };
}

Json versions() {
  return {{"fracnoise", FRACNOISE_VERSION},
          {"compiler", __VERSION__},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"boost", BOOST_LIB_VERSION},
          {"gsl", GSL_VERSION},
          {"fftw", std::string(fftw_version)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                                "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"cli11", CLI11_VERSION}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracnoise: parabolic Volterra equations driven by fractional noise"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FRACNOISE_VERSION);

  auto subs = subcommands();
  struct Bound {
    std::string config_path, out_dir, formats;
    unsigned workers = 1;
    std::map<std::string, std::string> values;
  };
  std::vector<Bound> bound(subs.size());
  std::vector<CLI::App*> apps;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    CLI::App* sc = app.add_subcommand(subs[i].name, subs[i].help);
    sc->add_option("--config", bound[i].config_path, "JSON experiment config")->check(CLI::ExistingFile);
    sc->add_option("--out-dir", bound[i].out_dir, std::string("output directory (default: $") + output_env + " or .)");
    sc->add_option("--format", bound[i].formats, "comma list of output formats: json,csv");
    sc->add_option("--workers", bound[i].workers, "worker threads")->check(CLI::Range(1u, 1024u));
    for (const auto& f : subs[i].flags) sc->add_option("--" + f.name, bound[i].values[f.name], f.help);
    apps.push_back(sc);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_invalid;
  }

  std::size_t which = 0;
  while (!apps[which]->parsed()) ++which;
  const Subcommand& sub = subs[which];
  Bound& b = bound[which];
  CLI::App* sc = apps[which];

  try {
    // defaults <- config file <- flags
    Json user = b.config_path.empty() ? Json::object() : load_json_file(b.config_path);
    if (!user.is_object()) throw ConfigError("config", "top level must be an object");
    for (const auto& f : sub.flags) {
      if (sc->count("--" + f.name) == 0) continue;
      std::string ptr = f.pointer;
      if (ptr == "@alpha") {
        const bool fractional = sc->count("--beta") > 0 || user.contains(Json::json_pointer("/dynamics/beta")) ||
                                user.contains(Json::json_pointer("/dynamics/alpha"));
        const bool kernel = sc->count("--kernel") > 0 || user.contains(Json::json_pointer("/dynamics/kernel")) ||
                            (!fractional && sub.defaults.contains(Json::json_pointer("/dynamics/kernel")));
        ptr = kernel ? "/dynamics/kernel/alpha" : "/dynamics/alpha";
      }
      user[Json::json_pointer(ptr)] = flag_value(b.values[f.name], f.list);
    }
    if (sc->count("--workers")) user["workers"] = b.workers;
    if (sc->count("--out-dir")) user[Json::json_pointer("/outputs/directory")] = b.out_dir;
    if (sc->count("--format")) user[Json::json_pointer("/outputs/formats")] = flag_value(b.formats, true);
    // Defaults of a dynamics kind, kernel family or model family the user
    // switched away from are dropped rather than merged.
    Json effective = sub.defaults;
    auto differs = [&](const char* ptr) {
      const Json::json_pointer p(ptr);
      return user.contains(p) && effective.contains(p) && user.at(p) != effective.at(p);
    };
    if (user.contains("dynamics") && effective.contains("dynamics")) {
      const bool user_kernel = user["dynamics"].contains("kernel");
      if (user_kernel != effective["dynamics"].contains("kernel") || differs("/dynamics/kernel/family"))
        effective.erase("dynamics");
    }
    if (differs("/model/family")) effective.erase("model");
    merge_into(effective, user);
    if (effective.contains("dynamics") && effective["dynamics"].contains("kernel") && effective["dynamics"].contains("beta"))
      throw ConfigError("dynamics", "give either a kernel or alpha/beta, not both");
    Config cfg(effective);

    Context ctx;
    ctx.workers = cfg.has("/workers") ? static_cast<unsigned>(cfg.integer("/workers", 1)) : 1u;
    const char* env = std::getenv(output_env);
    ctx.out_dir = cfg.has("/outputs/directory") ? fs::path(cfg.string("/outputs/directory"))
                  : (env && *env)               ? fs::path(env)
                                                : fs::path(".");
    if (cfg.has("/outputs/formats")) {
      ctx.want_json = ctx.want_csv = false;
      for (const auto& f : cfg.at("/outputs/formats")) {
        if (f == "json")
          ctx.want_json = true;
        else if (f == "csv")
          ctx.want_csv = true;
        else
          throw ConfigError("outputs.formats", "expected json and/or csv");
      }
    }
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec) throw ConfigError("outputs.directory", "cannot create " + ctx.out_dir.string() + ": " + ec.message());

    const int code = sub.run(cfg, ctx);

    Json args = Json::array();
    for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
    Json manifest = {{"subcommand", sub.name},
                     {"argv", args},
                     {"config", effective},
                     {"seed", cfg.has("/mc/seed") ? Json(cfg.seed("/mc/seed")) : Json(nullptr)},
                     {"workers", ctx.workers},
                     {"versions", versions()},
                     {"outputs", ctx.written},
                     {"exit_code", code}};
    io::write_file((ctx.out_dir / (sub.name + ".manifest.json")).string(), io::dump(manifest) + "\n");
    return code;
  } catch (const ConfigError& e) {
    std::cerr << "fracnoise " << sub.name << ": invalid input: " << e.what() << "\n";
    return exit_invalid;
  } catch (const NumericalFailure& e) {
    std::cerr << "fracnoise " << sub.name << ": numerical failure: " << e.what() << "\n";
    return exit_numerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fracnoise " << sub.name << ": invalid input: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::domain_error& e) {
    std::cerr << "fracnoise " << sub.name << ": invalid input: " << e.what() << "\n";
    return exit_invalid;
  } catch (const Json::exception& e) {
    std::cerr << "fracnoise " << sub.name << ": invalid input: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::exception& e) {
    std::cerr << "fracnoise " << sub.name << ": " << e.what() << "\n";
    return exit_invalid;
  }
}
