// fbp: simulation, moment evaluation, estimation, and study commands for the
// fractional binomial process. Every command is a pure function of its
// resolved configuration (seed included): outputs are byte-reproducible, and
// the resolved config is embedded in JSON outputs or written as a `.config`
// sidecar next to CSV outputs. A sidecar is itself a valid --config file.
//
// Exit codes: 0 success, 1 validation, 2 computation failure, 3 I/O.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "fbp/estimator.hpp"
#include "fbp/moments.hpp"
#include "fbp/parallel.hpp"
#include "fbp/process.hpp"
#include "fbp/report.hpp"
#include "fbp/rng.hpp"

namespace {

using fbp::ConfigItems;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Fn>
void write_file(const std::string& path, Fn&& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  body(out);
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

void write_sidecar(const std::string& out_path, const ConfigItems& items) {
  write_file(out_path + ".config",
             [&](std::ostream& os) { fbp::write_config(os, items); });
}

double to_double(std::string_view token, const std::string& what) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw std::invalid_argument(what + ": expected a finite number, got \"" +
                                std::string(token) + "\"");
  }
  return value;
}

long to_long(std::string_view token, const std::string& what) {
  long value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument(what + ": expected an integer, got \"" +
                                std::string(token) + "\"");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      return parts;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Grid grammar: "a,b,c" (explicit, strictly increasing, >= 0),
// "lin:a:b:n" (n >= 2 evenly spaced points), "log:a:b:n" (log-spaced, a > 0).
std::vector<double> parse_time_grid(const std::string& spec) {
  const bool lin = spec.rfind("lin:", 0) == 0;
  const bool log = spec.rfind("log:", 0) == 0;
  std::vector<double> grid;
  if (lin || log) {
    const auto parts = split(std::string_view(spec).substr(4), ':');
    if (parts.size() != 3) {
      throw std::invalid_argument("t-grid: expected " +
                                  std::string(lin ? "lin" : "log") +
                                  ":<start>:<stop>:<count>, got \"" + spec + "\"");
    }
    const double a = to_double(parts[0], "t-grid start");
    const double b = to_double(parts[1], "t-grid stop");
    const long n = to_long(parts[2], "t-grid count");
    if (n < 2) throw std::invalid_argument("t-grid: count must be at least 2");
    if (!(a < b)) throw std::invalid_argument("t-grid: start must be below stop");
    if (lin && a < 0.0) throw std::invalid_argument("t-grid: times must be >= 0");
    if (log && !(a > 0.0)) {
      throw std::invalid_argument("t-grid: log spacing needs start > 0");
    }
    grid.resize(static_cast<std::size_t>(n));
    grid.front() = a;
    grid.back() = b;
    if (lin) {
      const double step = (b - a) / static_cast<double>(n - 1);
      for (long i = 1; i + 1 < n; ++i) grid[i] = a + step * static_cast<double>(i);
    } else {
      const double la = std::log(a);
      const double step = (std::log(b) - la) / static_cast<double>(n - 1);
      for (long i = 1; i + 1 < n; ++i) {
        grid[i] = std::exp(la + step * static_cast<double>(i));
      }
    }
    return grid;
  }
  for (const auto& token : split(spec, ',')) {
    const auto t = trim(token);
    if (t.empty()) throw std::invalid_argument("t-grid: empty entry in \"" + spec + "\"");
    grid.push_back(to_double(t, "t-grid entry"));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0) throw std::invalid_argument("t-grid: times must be >= 0");
    if (i > 0 && !(grid[i - 1] < grid[i])) {
      throw std::invalid_argument("t-grid: times must be strictly increasing");
    }
  }
  return grid;
}

std::string fmt_int(long long v) { return std::to_string(v); }

void check_threads(int threads) {
  if (threads < 1) throw std::invalid_argument("--threads must be at least 1");
}

// Per-command CLI::App: parsed as its own top-level application so that
// --config files (flat key=value, keys mirroring flag names) are actually
// processed; command-line flags always win. The hidden --command option lets
// a generated sidecar be replayed as-is and rejects cross-command reuse.
void configure_app(CLI::App& app, const std::string& command) {
  app.name("fbp " + command);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "flat key=value config file (flags win)");
  app.add_option("--command")->check(CLI::IsMember({command}))->group("");
}

// Returns an exit code if parsing ended the run (help or error), -1 otherwise.
int parse_or_exit(CLI::App& app, int argc, char** argv) {
  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError& e) {
    app.exit(e);
    return 3;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return -1;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(int argc, char** argv) {
  fbp::ProcessParams params;
  int paths = 1;
  double horizon = 0.0;
  std::uint64_t events = 0;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  std::string format = "csv";

  CLI::App app{"fbp simulate: write sample paths of the process as CSV"};
  configure_app(app, "simulate");
  app.add_option("--lambda", params.lambda, "birth rate per vacant slot")->required();
  app.add_option("--mu", params.mu, "death rate per individual")->required();
  app.add_option("--nu", params.nu, "fractional order in (0,1], 1 = classical");
  app.add_option("--N", params.capacity, "carrying capacity")->required();
  app.add_option("--M", params.initial, "initial population")->required();
  app.add_option("--paths", paths, "number of independent paths");
  CLI::Option* horizon_opt =
      app.add_option("--horizon", horizon, "simulate up to this time");
  CLI::Option* events_opt =
      app.add_option("--events", events, "simulate exactly this many events");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--threads", threads, "worker count (output-invariant)");
  app.add_option("--out", out, "output CSV path")->required();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv"}));
  if (const int code = parse_or_exit(app, argc, argv); code >= 0) return code;

  params.validate();
  check_threads(threads);
  if (paths < 1) throw std::invalid_argument("--paths must be at least 1");
  const bool horizon_mode = horizon_opt->count() > 0;
  if (horizon_mode == (events_opt->count() > 0)) {
    throw std::invalid_argument("give exactly one of --horizon or --events");
  }

  std::vector<fbp::SamplePath> results(static_cast<std::size_t>(paths));
  fbp::parallel_for(paths, threads, [&](int i) {
    fbp::RngStream stream(seed, static_cast<std::uint64_t>(i));
    results[static_cast<std::size_t>(i)] =
        horizon_mode ? fbp::simulate_fbp_path(params, horizon, stream)
                     : fbp::simulate_fbp_path_events(params, events, stream);
  });

  ConfigItems config{
      {"command", "simulate"},
      {"lambda", fbp::fmt17(params.lambda)},
      {"mu", fbp::fmt17(params.mu)},
      {"nu", fbp::fmt17(params.nu)},
      {"N", fmt_int(params.capacity)},
      {"M", fmt_int(params.initial)},
      {"paths", fmt_int(paths)},
  };
  if (horizon_mode) {
    config.emplace_back("horizon", fbp::fmt17(horizon));
  } else {
    config.emplace_back("events", fmt_int(static_cast<long long>(events)));
  }
  config.emplace_back("seed", std::to_string(seed));
  config.emplace_back("format", format);

  write_file(out, [&](std::ostream& os) { fbp::write_paths_csv(os, results); });
  write_sidecar(out, config);
  return 0;
}

// ---------------------------------------------------------------------------
// moments

int cmd_moments(int argc, char** argv) {
  fbp::ProcessParams params;
  std::string t_grid;
  double s = 0.0;
  std::string out;
  std::string format = "csv";

  CLI::App app{"fbp moments: tabulate closed-form moments over a time grid as CSV"};
  configure_app(app, "moments");
  app.add_option("--lambda", params.lambda, "birth rate per vacant slot")->required();
  app.add_option("--mu", params.mu, "death rate per individual")->required();
  app.add_option("--nu", params.nu, "fractional order in (0,1]");
  app.add_option("--N", params.capacity, "carrying capacity")->required();
  app.add_option("--M", params.initial, "initial population")->required();
  app.add_option("--t-grid", t_grid, "times: a,b,c | lin:a:b:n | log:a:b:n")
      ->required();
  CLI::Option* s_opt = app.add_option(
      "--s", s, "fixed earlier time; switches to the covariance table");
  app.add_option("--out", out, "output CSV path")->required();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv"}));
  if (const int code = parse_or_exit(app, argc, argv); code >= 0) return code;

  params.validate();
  const auto grid = parse_time_grid(t_grid);
  const bool covariance_mode = s_opt->count() > 0;

  ConfigItems config{
      {"command", "moments"},
      {"lambda", fbp::fmt17(params.lambda)},
      {"mu", fbp::fmt17(params.mu)},
      {"nu", fbp::fmt17(params.nu)},
      {"N", fmt_int(params.capacity)},
      {"M", fmt_int(params.initial)},
      {"t-grid", t_grid},
  };

  if (covariance_mode) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument(
          "--s must be positive (correlation needs both variances nonzero)");
    }
    std::vector<fbp::CovarianceRow> rows;
    rows.reserve(grid.size());
    for (const double t : grid) {
      if (t < s) {
        throw std::invalid_argument(
            "t-grid: all times must be >= --s in covariance mode");
      }
      fbp::CovarianceRow row;
      row.s = s;
      row.t = t;
      row.covariance = fbp::covariance(params, s, t);
      row.correlation = fbp::correlation(params, s, t);
      row.asymptotic_covariance = fbp::asymptotic_covariance(params, s, t);
      row.asymptotic_correlation = fbp::asymptotic_correlation(params, s, t);
      rows.push_back(row);
    }
    config.emplace_back("s", fbp::fmt17(s));
    config.emplace_back("format", format);
    write_file(out, [&](std::ostream& os) { fbp::write_covariance_csv(os, rows); });
  } else {
    std::vector<fbp::MomentPoint> points;
    points.reserve(grid.size());
    for (const double t : grid) {
      fbp::MomentPoint p;
      p.t = t;
      p.mean = fbp::theoretical_mean(params, t);
      p.variance = fbp::theoretical_variance(params, t);
      p.second_moment = fbp::theoretical_second_moment(params, t);
      points.push_back(p);
    }
    config.emplace_back("format", format);
    write_file(out, [&](std::ostream& os) { fbp::write_moments_csv(os, points); });
  }
  write_sidecar(out, config);
  return 0;
}

// ---------------------------------------------------------------------------
// estimate

std::vector<int> read_counts(const std::string& path, int capacity) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path);
  std::vector<int> counts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto token = trim(line);
    if (token.empty() || token.front() == '#') continue;
    const long value = to_long(token, path + ":" + std::to_string(line_no));
    if (value < 0 || value > capacity) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": count " + std::to_string(value) +
                                  " outside [0, N]");
    }
    counts.push_back(static_cast<int>(value));
  }
  if (in.bad()) throw IoError("read failed: " + path);
  return counts;
}

fbp::MomentSummary read_moments_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open moments file: " + path);
  fbp::MomentSummary summary;
  bool seen_m1 = false, seen_m2 = false, seen_j = false, seen_t = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto token = trim(line);
    if (token.empty() || token.front() == '#') continue;
    const auto eq = token.find('=');
    const std::string where = path + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(where + ": expected key=value");
    }
    const auto key = trim(token.substr(0, eq));
    const auto value = trim(token.substr(eq + 1));
    auto once = [&](bool& seen) {
      if (seen) throw std::invalid_argument(where + ": duplicate key");
      seen = true;
    };
    if (key == "m1") {
      once(seen_m1);
      summary.m1 = to_double(value, where);
    } else if (key == "m2") {
      once(seen_m2);
      summary.m2 = to_double(value, where);
    } else if (key == "J") {
      once(seen_j);
      summary.sample_size = static_cast<int>(to_long(value, where));
    } else if (key == "T") {
      once(seen_t);
      summary.observation_time = to_double(value, where);
    } else {
      throw std::invalid_argument(where + ": unknown key \"" + std::string(key) +
                                  "\" (expected m1, m2, J, T)");
    }
  }
  if (in.bad()) throw IoError("read failed: " + path);
  if (!(seen_m1 && seen_m2 && seen_j && seen_t)) {
    throw std::invalid_argument(path + ": needs all of m1, m2, J, T");
  }
  return summary;
}

int cmd_estimate(int argc, char** argv) {
  double mu = 0.0;
  int capacity = 0;
  int initial = 0;
  std::string input;
  std::string moments_file;
  double lambda = 0.0;
  double nu = 0.0;
  int sample_size = 0;
  double observation_time = 0.0;
  std::uint64_t seed = 1;
  int threads = 1;
  fbp::SolverOptions solver;
  std::string out;
  std::string format = "json";

  CLI::App app{"fbp estimate: recover (lambda, nu) from a cross-sectional sample"};
  configure_app(app, "estimate");
  app.add_option("--mu", mu, "known death rate")->required();
  app.add_option("--N", capacity, "known carrying capacity")->required();
  app.add_option("--M", initial, "known initial population")->required();
  CLI::Option* input_opt = app.add_option(
      "--input", input, "file of population counts, one per line");
  CLI::Option* moments_opt = app.add_option(
      "--moments-file", moments_file,
      "file with m1=, m2=, J=, T= lines instead of raw counts");
  input_opt->excludes(moments_opt);
  CLI::Option* lambda_opt =
      app.add_option("--lambda", lambda, "true birth rate (self-simulation)");
  CLI::Option* nu_opt =
      app.add_option("--nu", nu, "true fractional order (self-simulation)");
  CLI::Option* j_opt =
      app.add_option("--J", sample_size, "sample size to simulate (self-simulation)");
  CLI::Option* t_opt = app.add_option("--T", observation_time,
                                      "observation time of the cross section");
  app.add_option("--seed", seed, "master seed (self-simulation)");
  app.add_option("--threads", threads, "worker count (output-invariant)");
  app.add_option("--lambda-min", solver.lambda_min, "search box lower edge");
  app.add_option("--lambda-max", solver.lambda_max, "search box upper edge");
  app.add_option("--tolerance", solver.tolerance,
                 "scaled-residual convergence threshold");
  app.add_option("--out", out, "output JSON path")->required();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json"}));
  if (const int code = parse_or_exit(app, argc, argv); code >= 0) return code;

  check_threads(threads);
  const fbp::KnownParams known{mu, capacity, initial};
  const bool from_counts = input_opt->count() > 0;
  const bool from_moments = moments_opt->count() > 0;

  ConfigItems config{
      {"command", "estimate"},
      {"mu", fbp::fmt17(mu)},
      {"N", fmt_int(capacity)},
      {"M", fmt_int(initial)},
  };

  fbp::MomentSummary summary;
  if (from_counts || from_moments) {
    auto forbid = [&](const CLI::Option* o, const char* name) {
      if (o->count() > 0) {
        throw std::invalid_argument(
            std::string(name) +
            " only applies when self-simulating (no --input / --moments-file)");
      }
    };
    forbid(lambda_opt, "--lambda");
    forbid(nu_opt, "--nu");
    forbid(j_opt, "--J");
    if (from_moments && t_opt->count() > 0) {
      throw std::invalid_argument(
          "--T conflicts with --moments-file (T comes from the file)");
    }
    if (from_counts) {
      if (t_opt->count() == 0) throw std::invalid_argument("--input requires --T");
      summary = fbp::sample_moments(read_counts(input, capacity), observation_time);
      config.emplace_back("input", input);
    } else {
      summary = read_moments_file(moments_file);
      config.emplace_back("moments-file", moments_file);
    }
  } else {
    if (lambda_opt->count() == 0 || nu_opt->count() == 0 || j_opt->count() == 0) {
      throw std::invalid_argument(
          "self-simulation needs --lambda, --nu, and --J (or provide --input / "
          "--moments-file)");
    }
    fbp::ProcessParams true_params{lambda, mu, nu, capacity, initial};
    true_params.validate();
    const double horizon = t_opt->count() > 0
                               ? observation_time
                               : fbp::default_observation_time(true_params);
    if (sample_size < 2) throw std::invalid_argument("--J must be at least 2");
    std::vector<int> values(static_cast<std::size_t>(sample_size));
    fbp::parallel_for(sample_size, threads, [&](int j) {
      fbp::RngStream stream(seed, static_cast<std::uint64_t>(j));
      values[static_cast<std::size_t>(j)] =
          fbp::sample_fbp_marginal(true_params, horizon, stream);
    });
    summary = fbp::sample_moments(values, horizon);
    config.emplace_back("lambda", fbp::fmt17(lambda));
    config.emplace_back("nu", fbp::fmt17(nu));
    config.emplace_back("J", fmt_int(sample_size));
    config.emplace_back("seed", std::to_string(seed));
  }

  config.emplace_back("T", fbp::fmt17(summary.observation_time));
  config.emplace_back("lambda-min", fbp::fmt17(solver.lambda_min));
  config.emplace_back("lambda-max", fbp::fmt17(solver.lambda_max));
  config.emplace_back("tolerance", fbp::fmt17(solver.tolerance));
  config.emplace_back("format", format);

  const fbp::EstimateResult result =
      fbp::solve_moment_equations(summary, known, solver);
  write_file(out, [&](std::ostream& os) {
    fbp::write_estimate_json(os, result, summary, config);
  });
  if (!result.converged) {
    std::cerr << "fbp: solver did not converge (residual "
              << fbp::fmt17(result.residual_norm) << "); see " << out << "\n";
    return 2;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// study

int cmd_study(int argc, char** argv) {
  fbp::ProcessParams params;
  int sample_size = 0;
  int replicates = 0;
  double observation_time = 0.0;
  std::uint64_t seed = 1;
  int threads = 1;
  fbp::SolverOptions solver;
  std::string out;
  std::string replicates_out;
  std::string format = "json";

  CLI::App app{
      "fbp study: Monte Carlo estimation study, K replicates of J-path samples"};
  configure_app(app, "study");
  app.add_option("--lambda", params.lambda, "true birth rate")->required();
  app.add_option("--mu", params.mu, "known death rate")->required();
  app.add_option("--nu", params.nu, "true fractional order")->required();
  app.add_option("--N", params.capacity, "carrying capacity")->required();
  app.add_option("--M", params.initial, "initial population")->required();
  app.add_option("--J", sample_size, "paths per replicate")->required();
  app.add_option("--K", replicates, "replicates")->required();
  CLI::Option* t_opt = app.add_option(
      "--T", observation_time, "observation time (default: mid-transient)");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--threads", threads, "worker count (output-invariant)");
  app.add_option("--lambda-min", solver.lambda_min, "search box lower edge");
  app.add_option("--lambda-max", solver.lambda_max, "search box upper edge");
  app.add_option("--tolerance", solver.tolerance,
                 "scaled-residual convergence threshold");
  app.add_option("--out", out, "output JSON path")->required();
  app.add_option("--replicates-out", replicates_out,
                 "optional per-replicate CSV path");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json"}));
  if (const int code = parse_or_exit(app, argc, argv); code >= 0) return code;

  params.validate();
  check_threads(threads);
  const double horizon = t_opt->count() > 0 ? observation_time
                                            : fbp::default_observation_time(params);

  const fbp::McStudyReport report = fbp::run_mc_study(
      params, sample_size, replicates, horizon, seed, threads, solver);

  const ConfigItems config{
      {"command", "study"},
      {"lambda", fbp::fmt17(params.lambda)},
      {"mu", fbp::fmt17(params.mu)},
      {"nu", fbp::fmt17(params.nu)},
      {"N", fmt_int(params.capacity)},
      {"M", fmt_int(params.initial)},
      {"J", fmt_int(sample_size)},
      {"K", fmt_int(replicates)},
      {"T", fbp::fmt17(horizon)},
      {"seed", std::to_string(seed)},
      {"lambda-min", fbp::fmt17(solver.lambda_min)},
      {"lambda-max", fbp::fmt17(solver.lambda_max)},
      {"tolerance", fbp::fmt17(solver.tolerance)},
      {"format", format},
  };

  write_file(out,
             [&](std::ostream& os) { fbp::write_study_json(os, report, config); });
  if (!replicates_out.empty()) {
    write_file(replicates_out, [&](std::ostream& os) {
      fbp::write_replicates_csv(os, report.records);
    });
    write_sidecar(replicates_out, config);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// lrd

int cmd_lrd(int argc, char** argv) {
  fbp::ProcessParams params;
  std::string mode;
  double s = 1.0;
  double delta = 1.0;
  std::string t_grid = "log:100:100000:13";
  double synthetic_exponent = 0.0;
  std::string out;
  std::string format = "json";

  CLI::App app{"fbp lrd: fit the correlation decay exponent and classify LRD/SRD"};
  configure_app(app, "lrd");
  app.add_option("--mode", mode, "fbp | fbn | synthetic")
      ->required()
      ->check(CLI::IsMember({"fbp", "fbn", "synthetic"}));
  CLI::Option* params_opts[5];
  params_opts[0] = app.add_option("--lambda", params.lambda,
                                  "birth rate per vacant slot");
  params_opts[1] = app.add_option("--mu", params.mu, "death rate per individual");
  params_opts[2] = app.add_option("--nu", params.nu, "fractional order in (0,1)");
  params_opts[3] = app.add_option("--N", params.capacity, "carrying capacity");
  params_opts[4] = app.add_option("--M", params.initial, "initial population");
  app.add_option("--s", s, "fixed earlier time");
  app.add_option("--delta", delta, "increment lag (fbn mode)");
  app.add_option("--t-grid", t_grid, "times: a,b,c | lin:a:b:n | log:a:b:n");
  CLI::Option* synthetic_opt = app.add_option(
      "--synthetic-exponent", synthetic_exponent,
      "exact power-law exponent for the synthetic test hook");
  app.add_option("--out", out, "output JSON path")->required();
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json"}));
  if (const int code = parse_or_exit(app, argc, argv); code >= 0) return code;

  const auto grid = parse_time_grid(t_grid);
  for (const double t : grid) {
    if (!(t > 0.0)) throw std::invalid_argument("t-grid: times must be > 0");
  }

  ConfigItems config{{"command", "lrd"}, {"mode", mode}};
  std::vector<std::pair<double, double>> points;
  points.reserve(grid.size());

  if (mode == "synthetic") {
    if (synthetic_opt->count() == 0) {
      throw std::invalid_argument("synthetic mode needs --synthetic-exponent");
    }
    for (const double t : grid) {
      points.emplace_back(t, std::pow(t, -synthetic_exponent));
    }
    config.emplace_back("synthetic-exponent", fbp::fmt17(synthetic_exponent));
  } else {
    static const char* kParamNames[5] = {"--lambda", "--mu", "--nu", "--N", "--M"};
    for (int i = 0; i < 5; ++i) {
      if (params_opts[i]->count() == 0) {
        throw std::invalid_argument(std::string(kParamNames[i]) +
                                    " is required in mode " + mode);
      }
    }
    params.validate();
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument("--s must be positive");
    }
    config.emplace_back("lambda", fbp::fmt17(params.lambda));
    config.emplace_back("mu", fbp::fmt17(params.mu));
    config.emplace_back("nu", fbp::fmt17(params.nu));
    config.emplace_back("N", fmt_int(params.capacity));
    config.emplace_back("M", fmt_int(params.initial));
    config.emplace_back("s", fbp::fmt17(s));
    if (mode == "fbn") {
      config.emplace_back("delta", fbp::fmt17(delta));
      for (const double t : grid) {
        points.emplace_back(
            t, std::abs(fbp::fbn_asymptotic_correlation(params, s, t, delta)));
      }
    } else {
      for (const double t : grid) {
        points.emplace_back(t, std::abs(fbp::asymptotic_correlation(params, s, t)));
      }
    }
  }
  config.emplace_back("t-grid", t_grid);
  config.emplace_back("format", format);

  const fbp::DependenceFit fit = fbp::fit_decay_exponent(points);
  const double d = fit.exponent;
  const std::string classification =
      (d > 0.0 && d < 1.0) ? "LRD" : (d > 1.0 && d < 2.0) ? "SRD" : "unclassified";

  write_file(out, [&](std::ostream& os) {
    fbp::write_lrd_json(os, mode, fit, classification, config);
  });
  return 0;
}

int usage(std::ostream& os, int code) {
  os << "fbp - fractional binomial process toolkit\n"
        "\n"
        "usage: fbp <command> [flags]\n"
        "\n"
        "  simulate   write sample paths as CSV\n"
        "  moments    tabulate closed-form moments or covariance tables as CSV\n"
        "  estimate   recover (lambda, nu) from a cross-sectional sample (JSON)\n"
        "  study      Monte Carlo estimation study over K replicates (JSON)\n"
        "  lrd        correlation decay exponent and LRD/SRD classification (JSON)\n"
        "\n"
        "`fbp <command> --help` lists the command's flags. Exit codes:\n"
        "0 success, 1 validation, 2 computation failure, 3 I/O.\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return usage(std::cerr, 1);
  const std::string_view command = argv[1];
  if (command == "-h" || command == "--help" || command == "help") {
    return usage(std::cout, 0);
  }

  try {
    if (command == "simulate") return cmd_simulate(argc - 1, argv + 1);
    if (command == "moments") return cmd_moments(argc - 1, argv + 1);
    if (command == "estimate") return cmd_estimate(argc - 1, argv + 1);
    if (command == "study") return cmd_study(argc - 1, argv + 1);
    if (command == "lrd") return cmd_lrd(argc - 1, argv + 1);
  } catch (const IoError& e) {
    std::cerr << "fbp: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "fbp: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "fbp: " << e.what() << "\n";
    return 2;
  }

  std::cerr << "fbp: unknown command \"" << command << "\"\n\n";
  return usage(std::cerr, 1);
}
