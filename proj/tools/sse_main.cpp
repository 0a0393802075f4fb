// sse: batch driver for semiclassical soliton ensemble experiments.
//
// Subcommands: spectrum, evaluate, grid, focus, converge, dispersionless,
// acceptance.  Each takes a single JSON config (--config) and writes CSV/JSON
// artifacts into --out.  Exit codes: 0 success, 1 computation failure
// (partial artifacts are written and flagged), 2 config error.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sse/acceptance.hpp"
#include "sse/dispersionless.hpp"
#include "sse/ensemble.hpp"
#include "sse/fitting.hpp"
#include "sse/focusing.hpp"
#include "sse/jsonio.hpp"
#include "sse/potentials.hpp"
#include "sse/scattering.hpp"

using nlohmann::json;

namespace {

struct Args {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;  // 0: hardware concurrency
  int precision_bits = 0;
  std::uint64_t seed = 12345;
};

int effective_threads(const Args& a) {
  if (a.threads > 0) return a.threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw sse::ConfigError("cannot open config " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw sse::ConfigError(std::string("config parse: ") + e.what());
  }
  if (!j.is_object()) throw sse::ConfigError("config must be a JSON object");
  return j;
}

void check_experiment(const json& cfg, const char* cmd) {
  if (cfg.contains("experiment") && cfg["experiment"] != cmd)
    throw sse::ConfigError(std::string("config experiment is not '") + cmd +
                           "'");
}

const json& need(const json& cfg, const char* key) {
  if (!cfg.contains(key))
    throw sse::ConfigError(std::string("config needs '") + key + "'");
  return cfg[key];
}

double num(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number())
    throw sse::ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& j, const char* key, int lo) {
  double d = num(j, key);
  if (d != std::floor(d) || d < lo)
    throw sse::ConfigError(std::string("'") + key + "' must be an integer >= " +
                           std::to_string(lo));
  return static_cast<int>(d);
}

std::vector<double> linspace_spec(const json& g, const char* what) {
  if (!g.is_object())
    throw sse::ConfigError(std::string(what) + ": need {min, max, count}");
  double lo = num(g, "min"), hi = num(g, "max");
  int n = integer(g, "count", 1);
  if (n > 1 && !(hi > lo))
    throw sse::ConfigError(std::string(what) + ": need max > min");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * i / double(n - 1);
  return v;
}

sse::Formulation parse_formulation(const std::string& s) {
  if (s == "auto") return sse::Formulation::Auto;
  if (s == "primary") return sse::Formulation::Primary;
  if (s == "renormalized") return sse::Formulation::Renormalized;
  throw sse::ConfigError("formulation must be auto|primary|renormalized");
}

std::string out_path(const Args& a, const std::string& name) {
  std::filesystem::create_directories(a.out_dir);
  return (std::filesystem::path(a.out_dir) / name).string();
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const json& cfg, const Args& a) {
  sse::PotentialFamily f = sse::family_from_json(need(cfg, "family"));
  int N = integer(cfg, "N", 0);
  sse::SpectralData sd = sse::wkb_spectrum(f, N, a.precision_bits);
  json rep = sse::report_header(cfg);
  rep["family"] = sse::family_to_json(f);
  rep["spectrum"] = sse::spectrum_to_json(sd);
  std::string path = out_path(a, "spectrum.json");
  sse::write_text_atomic(path, rep.dump(2) + "\n");
  std::printf("spectrum: %s N=%d epsilon=%s -> %s\n", f.kind_name().c_str(), N,
              sse::csv_number(sd.epsilon).c_str(), path.c_str());
  return 0;
}

// ---------------------------------------------------------------- evaluate

int cmd_evaluate(const json& cfg, const Args& a) {
  sse::PotentialFamily f = sse::family_from_json(need(cfg, "family"));
  int N = integer(cfg, "N", 0);
  const json& pts = need(cfg, "points");
  if (!pts.is_array() || pts.empty())
    throw sse::ConfigError("'points' must be a nonempty array");

  std::vector<double> xs;
  std::vector<std::vector<double>> times;
  for (const auto& p : pts) {
    xs.push_back(num(p, "x"));
    std::vector<double> t;
    if (p.contains("times")) t = p["times"].get<std::vector<double>>();
    times.push_back(std::move(t));
  }
  for (const auto& t : times)
    if (t.size() != times.front().size())
      throw sse::ConfigError("all points must share the same time arity");

  sse::SpectralData sd0 = sse::wkb_spectrum(f, N);
  int bits = a.precision_bits;
  if (bits == 0)
    for (size_t i = 0; i < xs.size(); ++i)
      bits = std::max(bits, sse::recommended_bits(sd0, xs[i], times[i]));
  sse::SpectralData sd = sse::wkb_spectrum(f, N, bits);
  sse::EvalOptions opts;
  opts.formulation = parse_formulation(cfg.value("formulation", "auto"));
  opts.forced_bits = a.precision_bits;

  sse::FieldGrid g;
  g.nx = xs.size();
  g.nt = 1;
  int failures = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    g.pts.push_back(sse::evaluate(sd, xs[i], times[i], opts));
    if (!g.pts.back().ok) ++failures;
  }

  std::string csv_path = out_path(a, "field.csv");
  sse::write_text_atomic(csv_path, sse::field_grid_csv(g));
  json rep = sse::report_header(cfg);
  rep["family"] = sse::family_to_json(f);
  rep["N"] = N;
  rep["epsilon"] = sd.epsilon;
  rep["data_bits"] = bits;
  rep["n_points"] = xs.size();
  rep["failures"] = failures;
  rep["csv"] = "field.csv";
  sse::write_text_atomic(out_path(a, "evaluate.json"), rep.dump(2) + "\n");
  std::printf("evaluate: %s N=%d %zu points, %d failed -> %s\n",
              f.kind_name().c_str(), N, xs.size(), failures, csv_path.c_str());
  return failures ? 1 : 0;
}

// -------------------------------------------------------------------- grid

int cmd_grid(const json& cfg, const Args& a) {
  sse::PotentialFamily f = sse::family_from_json(need(cfg, "family"));
  int N = integer(cfg, "N", 0);
  std::vector<double> xs = linspace_spec(need(cfg, "x"), "x");

  const json& tj = need(cfg, "times");
  std::vector<std::vector<double>> tl;
  if (tj.contains("list")) {
    for (const auto& row : tj["list"])
      tl.push_back(row.get<std::vector<double>>());
    for (const auto& t : tl)
      if (t.size() != tl.front().size())
        throw sse::ConfigError("times.list rows must share one arity");
  } else if (tj.contains("t2")) {
    for (double t : linspace_spec(tj["t2"], "times.t2")) tl.push_back({t});
  } else if (tj.contains("mixture")) {
    const json& mj = tj["mixture"];
    std::vector<double> av = need(mj, "a").get<std::vector<double>>();
    if (av.empty() || av.back() == 0)
      throw sse::ConfigError("mixture 'a' needs a nonzero top coefficient");
    for (double t : linspace_spec(need(mj, "t"), "times.mixture.t"))
      tl.push_back(sse::mixture_times(av, t));
  } else {
    throw sse::ConfigError("'times' needs one of: list, t2, mixture");
  }
  if (tl.empty()) throw sse::ConfigError("empty time grid");

  sse::SpectralData sd0 = sse::wkb_spectrum(f, N);
  int bits = a.precision_bits;
  if (bits == 0)
    for (double x : xs)
      for (const auto& t : tl)
        bits = std::max(bits, sse::recommended_bits(sd0, x, t));
  sse::SpectralData sd = sse::wkb_spectrum(f, N, bits);
  sse::EvalOptions opts;
  opts.formulation = parse_formulation(cfg.value("formulation", "auto"));
  opts.forced_bits = a.precision_bits;

  sse::FieldGrid g = sse::evaluate_grid(sd, xs, tl, opts, effective_threads(a));
  int failures = 0;
  for (const auto& p : g.pts)
    if (!p.ok) ++failures;

  std::string csv_path = out_path(a, "grid.csv");
  sse::write_text_atomic(csv_path, sse::field_grid_csv(g));
  json rep = sse::report_header(cfg);
  rep["family"] = sse::family_to_json(f);
  rep["N"] = N;
  rep["epsilon"] = sd.epsilon;
  rep["data_bits"] = bits;
  rep["nx"] = g.nx;
  rep["nt"] = g.nt;
  rep["failures"] = failures;
  rep["csv"] = "grid.csv";
  sse::write_text_atomic(out_path(a, "grid.json"), rep.dump(2) + "\n");
  std::printf("grid: %s N=%d %zux%zu samples, %d failed -> %s\n",
              f.kind_name().c_str(), N, g.nx, g.nt, failures, csv_path.c_str());
  return failures ? 1 : 0;
}

// ------------------------------------------------------------------- focus

int cmd_focus(const json& cfg, const Args& a) {
  sse::PotentialFamily f = sse::family_from_json(need(cfg, "family"));
  int K = integer(cfg, "K", -1000000);
  int N = integer(cfg, "N", 1);
  double halfwidth = cfg.value("halfwidth", 3.0);
  int grid = cfg.value("grid", 41);
  sse::FocusEvent ev = sse::focus_point(f, K);

  const std::string mode = cfg.value("mode", "pure");
  sse::FlowMixture mix;
  int m = 2;
  std::vector<double> center_times;
  if (mode == "pure") {
    m = cfg.value("m", 2);
    center_times = ev.t0;
  } else if (mode == "mixture") {
    const json& mj = need(cfg, "mixture");
    mix = sse::mixture_coefficients(f, K, num(mj, "alpha"));
    if (mj.contains("a")) {
      std::vector<double> av = mj["a"].get<std::vector<double>>();
      if (static_cast<int>(av.size()) != ev.M - 1)
        throw sse::ConfigError("mixture 'a' must list a_2..a_M");
      mix.a = std::move(av);
    }
    if (mj.contains("t_focus")) mix.t_focus = num(mj, "t_focus");
    center_times = sse::mixture_times(mix.a, mix.t_focus);
  } else {
    throw sse::ConfigError("mode must be pure|mixture");
  }

  sse::SpectralData sd0 = sse::wkb_spectrum(f, N);
  int bits = a.precision_bits
                 ? a.precision_bits
                 : sse::recommended_bits(sd0, ev.x0, center_times);
  sse::SpectralData sd = sse::wkb_spectrum(f, N, bits);
  sse::EvalOptions opts;
  opts.forced_bits = a.precision_bits;

  sse::PeakReport rep =
      mode == "pure"
          ? sse::peak_check(sd, ev, m, halfwidth, grid, effective_threads(a),
                            opts)
          : sse::peak_check_mixture(sd, ev, mix, halfwidth, grid,
                                    effective_threads(a), opts);

  std::string csv_path = out_path(a, "focus_window.csv");
  sse::write_text_atomic(csv_path, sse::window_grid_csv(rep.grid, rep.X, rep.T));
  json j = sse::report_header(cfg);
  j["family"] = sse::family_to_json(f);
  j["K"] = K;
  j["N"] = N;
  j["epsilon"] = sd.epsilon;
  j["data_bits"] = bits;
  j["x0"] = ev.x0;
  j["t0"] = ev.t0;
  j["nu"] = ev.nu;
  j["M"] = ev.M;
  j["mode"] = mode;
  if (mode == "pure") {
    j["m"] = m;
  } else {
    j["mixture"] = {{"a", mix.a},
                    {"alpha", mix.alpha},
                    {"periodic", mix.periodic},
                    {"t_focus", mix.t_focus}};
  }
  j["r"] = rep.r;
  j["max_abs"] = rep.max_abs;
  j["argmax"] = {rep.X_arg, rep.T_arg};
  j["phase_center"] = rep.phase_center;
  j["phase_error"] = rep.phase_error;
  j["failures"] = rep.failures;
  j["csv"] = "focus_window.csv";
  sse::write_text_atomic(out_path(a, "focus.json"), j.dump(2) + "\n");
  std::printf(
      "focus: %s K=%d N=%d r=%.6f argmax=(%g, %g) phase_err=%.2e, %d failed "
      "-> %s\n",
      f.kind_name().c_str(), K, N, rep.r, rep.X_arg, rep.T_arg, rep.phase_error,
      rep.failures, csv_path.c_str());
  return rep.failures ? 1 : 0;
}

// ----------------------------------------------------------------- converge

int cmd_converge(const json& cfg, const Args& a) {
  sse::PotentialFamily f = sse::family_from_json(need(cfg, "family"));
  const json& nj = need(cfg, "Ns");
  if (!nj.is_array()) throw sse::ConfigError("'Ns' must be an array");
  std::vector<int> Ns;
  for (const auto& v : nj) {
    if (!v.is_number_integer() || v.get<int>() < 1)
      throw sse::ConfigError("'Ns' entries must be integers >= 1");
    Ns.push_back(v.get<int>());
  }
  const json& rj = need(cfg, "region");
  sse::RegionSpec region;
  region.lo = num(rj, "lo");
  region.hi = num(rj, "hi");
  region.two_sided = rj.value("two_sided", false);
  region.points = rj.value("points", 41);

  sse::FitReport rep = sse::converge_fit(f, Ns, region, effective_threads(a));

  json j = sse::report_header(cfg);
  j["family"] = sse::family_to_json(f);
  j["Ns"] = Ns;
  j["region"] = {{"lo", region.lo},
                 {"hi", region.hi},
                 {"two_sided", region.two_sided},
                 {"points", region.points}};
  j["exponent"] = rep.exponent;
  j["prefactor"] = rep.prefactor;
  j["residual"] = rep.residual;
  json samples = json::array();
  for (const auto& s : rep.samples)
    samples.push_back({{"eps", s.eps}, {"error", s.error}});
  j["samples"] = samples;
  std::string path = out_path(a, "converge.json");
  sse::write_text_atomic(path, j.dump(2) + "\n");
  std::printf("converge: %s exponent=%.4f prefactor=%.4g residual=%.2e -> %s\n",
              f.kind_name().c_str(), rep.exponent, rep.prefactor, rep.residual,
              path.c_str());
  return 0;
}

// ------------------------------------------------------------ dispersionless

void profile_csv_rows(std::string& csv, const sse::TalanovParams& p,
                      const std::vector<double>& xs,
                      const std::vector<double>& ts,
                      const std::vector<char>& live,
                      const std::vector<std::pair<double, double>>& widths) {
  for (double x : xs)
    for (size_t k = 0; k < ts.size(); ++k) {
      if (!live[k]) continue;
      auto st = sse::talanov_profile_at(p, x, widths[k].first,
                                        widths[k].second);
      csv += sse::csv_number(x) + ", " + sse::csv_number(ts[k]) + ", " +
             sse::csv_number(st.rho) + ", " + sse::csv_number(st.mu) + "\n";
    }
}

int cmd_dispersionless(const json& cfg, const Args& a) {
  const std::string sol = need(cfg, "solution").get<std::string>();
  json rep = sse::report_header(cfg);
  rep["solution"] = sol;

  if (sol == "talanov" || sol == "selfsimilar") {
    sse::TalanovParams p =
        sol == "talanov"
            ? sse::talanov_from_amplitude(num(cfg, "A_max"), num(cfg, "w0"))
            : sse::talanov_selfsimilar(num(cfg, "F"), num(cfg, "t_collapse"));
    std::vector<double> xs = linspace_spec(need(cfg, "x"), "x");
    std::vector<double> ts = linspace_spec(need(cfg, "t"), "t");
    // solve the width once per time; times at or past collapse are dropped
    // from the profile and counted
    std::vector<std::pair<double, double>> widths(ts.size());
    std::vector<char> live(ts.size(), 0);
    int collapsed = 0;
    for (size_t k = 0; k < ts.size(); ++k) {
      try {
        widths[k] = sse::width_solve(p, ts[k]);
        live[k] = 1;
      } catch (const sse::CollapseError&) {
        ++collapsed;
      }
    }
    std::string csv = "x, t, rho, mu\n";
    profile_csv_rows(csv, p, xs, ts, live, widths);
    std::string csv_path = out_path(a, sol + ".csv");
    sse::write_text_atomic(csv_path, csv);
    rep["params"] = {
        {"E", p.E}, {"F", p.F}, {"w0", p.w0}, {"A_max", p.A_max}};
    rep["collapsed_times"] = collapsed;
    rep["csv"] = sol + ".csv";
    if (sol == "talanov") {
      double dur = sse::talanov_duration(p);
      rep["duration"] = dur;
      std::printf("dispersionless talanov: delta_t=%.12g, %d collapsed -> %s\n",
                  dur, collapsed, csv_path.c_str());
    } else {
      rep["t_collapse"] = p.t_collapse;
      std::printf("dispersionless selfsimilar: t_collapse=%g, %d collapsed -> "
                  "%s\n",
                  p.t_collapse, collapsed, csv_path.c_str());
    }
  } else if (sol == "ask") {
    double A = num(cfg, "A_max");
    std::vector<double> xs = linspace_spec(need(cfg, "x"), "x");
    std::vector<double> ts = linspace_spec(need(cfg, "t"), "t");
    std::string csv = "x, t, rho, mu\n";
    int skipped = 0;  // points at or past the gradient catastrophe
    for (double x : xs)
      for (double t : ts) {
        try {
          auto st = sse::ask_solve(A, x, t);
          csv += sse::csv_number(x) + ", " + sse::csv_number(t) + ", " +
                 sse::csv_number(st.rho) + ", " + sse::csv_number(st.mu) + "\n";
        } catch (const std::exception&) {
          ++skipped;
        }
      }
    std::string csv_path = out_path(a, "ask.csv");
    sse::write_text_atomic(csv_path, csv);
    rep["skipped_points"] = skipped;
    rep["csv"] = "ask.csv";
    if (cfg.contains("axis_t")) {
      std::string axis = "t, rho\n";
      for (double t : linspace_spec(cfg["axis_t"], "axis_t"))
        axis += sse::csv_number(t) + ", " +
                sse::csv_number(sse::ask_axis(A, t)) + "\n";
      sse::write_text_atomic(out_path(a, "ask_axis.csv"), axis);
      rep["axis_csv"] = "ask_axis.csv";
    }
    std::printf("dispersionless ask: %zux%zu samples, %d past catastrophe -> "
                "%s\n",
                xs.size(), ts.size(), skipped, csv_path.c_str());
  } else if (sol == "interpolation") {
    const json& dj = need(cfg, "deltas");
    if (!dj.is_array() || dj.empty())
      throw sse::ConfigError("'deltas' must be a nonempty array");
    std::string csv = "delta, rho_c, t_c, blowup\n";
    json locus = json::array();
    for (const auto& v : dj) {
      double d = v.get<double>();
      sse::CatastrophePoint c = sse::interpolation_catastrophe(d);
      csv += sse::csv_number(d) + ", " + sse::csv_number(c.rho_c) + ", " +
             sse::csv_number(c.t_c) + ", " + (c.blowup ? "1" : "0") + "\n";
      locus.push_back({{"delta", d},
                       {"rho_c", c.rho_c},
                       {"t_c", c.t_c},
                       {"blowup", c.blowup}});
    }
    std::string csv_path = out_path(a, "interpolation.csv");
    sse::write_text_atomic(csv_path, csv);
    rep["locus"] = locus;
    rep["csv"] = "interpolation.csv";
    std::printf("dispersionless interpolation: %zu deltas -> %s\n", dj.size(),
                csv_path.c_str());
  } else {
    throw sse::ConfigError(
        "solution must be talanov|selfsimilar|ask|interpolation");
  }

  sse::write_text_atomic(out_path(a, "dispersionless.json"),
                         rep.dump(2) + "\n");
  return 0;
}

// --------------------------------------------------------------- acceptance

int cmd_acceptance(const json& cfg, const Args& a) {
  std::vector<int> which;
  if (cfg.contains("criteria")) {
    for (const auto& v : cfg["criteria"]) {
      if (!v.is_number_integer())
        throw sse::ConfigError("'criteria' entries must be integers");
      which.push_back(v.get<int>());
    }
  }
  if (which.empty()) which = sse::all_criteria();

  auto results = sse::run_acceptance(which, a.seed, effective_threads(a));
  bool all_pass = true;
  json jr = json::array();
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("criterion %2d  %-38s  %s  (%.1f s)  %s\n", r.id,
                r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds,
                r.detail.c_str());
    jr.push_back({{"id", r.id},
                  {"name", r.name},
                  {"pass", r.pass},
                  {"detail", r.detail},
                  {"seconds", r.seconds}});
  }
  json rep = sse::report_header(cfg);
  rep["results"] = jr;
  rep["all_pass"] = all_pass;
  sse::write_text_atomic(out_path(a, "acceptance.json"), rep.dump(2) + "\n");
  return all_pass ? 0 : 1;
}

void add_common(CLI::App* sub, Args& a, bool config_required) {
  auto* opt = sub->add_option("--config", a.config_path, "JSON config file");
  if (config_required) opt->required();
  sub->add_option("--out", a.out_dir, "output directory (default .)");
  sub->add_option("--threads", a.threads, "worker threads (0 = hardware)");
  sub->add_option("--precision-bits", a.precision_bits,
                  "override working precision (0 = automatic policy)");
  sub->add_option("--seed", a.seed, "seed for randomized property suites");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semiclassical soliton ensemble experiments"};
  app.require_subcommand(1);
  Args a;
  int rc = 0;

  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const json&, const Args&);
    bool config_required;
  };
  const Cmd cmds[] = {
      {"spectrum", "WKB spectral data for one family at one N", cmd_spectrum,
       true},
      {"evaluate", "field samples at explicit (x, times) points", cmd_evaluate,
       true},
      {"grid", "field on an x-by-time grid", cmd_grid, true},
      {"focus", "focus-event prediction and window peak scan", cmd_focus, true},
      {"converge", "sup-error power-law fit across ensemble sizes",
       cmd_converge, true},
      {"dispersionless", "Talanov / hump / interpolation solutions",
       cmd_dispersionless, true},
      {"acceptance", "run the go/no-go criteria suite", cmd_acceptance, false},
  };
  for (const Cmd& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, a, c.config_required);
    sub->callback([&a, &rc, c]() {
      json cfg = json::object();
      if (!a.config_path.empty()) cfg = load_config(a.config_path);
      check_experiment(cfg, c.name);
      rc = c.run(cfg, a);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are config errors
  } catch (const sse::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return rc;
}
