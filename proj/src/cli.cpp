#include "lagspec/cli.hpp"

#include "lagspec/acov.hpp"
#include "lagspec/dependence.hpp"
#include "lagspec/error.hpp"
#include "lagspec/harness.hpp"
#include "lagspec/inference.hpp"
#include "lagspec/json_io.hpp"
#include "lagspec/kernels.hpp"
#include "lagspec/model.hpp"
#include "lagspec/series.hpp"
#include "lagspec/spectral.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace lagspec {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class LogLevel { error, warn, info, debug };

struct Globals {
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string output;
  std::string log_level = "warn";
};

class Logger {
 public:
  Logger(std::ostream& err, LogLevel level) : err_(err), level_(level) {}
  void warn(const std::string& msg) const { emit(LogLevel::warn, "warning", msg); }
  void info(const std::string& msg) const { emit(LogLevel::info, "info", msg); }

 private:
  void emit(LogLevel at, const char* tag, const std::string& msg) const {
    if (static_cast<int>(at) <= static_cast<int>(level_)) err_ << tag << ": " << msg << '\n';
  }
  std::ostream& err_;
  LogLevel level_;
};

LogLevel parse_log_level(const std::string& s) {
  if (s == "error") return LogLevel::error;
  if (s == "warn") return LogLevel::warn;
  if (s == "info") return LogLevel::info;
  return LogLevel::debug;
}

// Turns a library validation failure into a usage error.
template <class F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::size_t parse_index(std::string_view s) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

EntryIndex parse_entry(std::string_view s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw UsageError("entry must be i,j, got '" + std::string(s) + "'");
  return {parse_index(parts[0]), parse_index(parts[1])};
}

// all | diag | i,j;i,j;...
std::vector<EntryIndex> parse_entries(const std::string& s, std::size_t n) {
  std::vector<EntryIndex> out;
  if (s == "all") {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) out.push_back({i, j});
    }
  } else if (s == "diag") {
    for (std::size_t i = 0; i < n; ++i) out.push_back({i, i});
  } else {
    for (const auto& part : split(s, ';')) {
      if (!part.empty()) out.push_back(parse_entry(part));
    }
  }
  for (const auto& e : out) {
    if (e.i >= n || e.j >= n) {
      throw UsageError("entry (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") outside dimension " +
                       std::to_string(n));
    }
  }
  if (out.empty()) throw UsageError("no entries selected");
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  for (const auto& part : split(s, ',')) {
    T v{};
    const auto* end = part.data() + part.size();
    const auto [ptr, ec] = std::from_chars(part.data(), end, v);
    if (part.empty() || ec != std::errc() || ptr != end) throw UsageError("bad list element '" + part + "'");
    out.push_back(v);
  }
  return out;
}

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw UsageError(Error(ErrorCode::InvalidLevel, "level = " + std::to_string(level) + " must lie in (0, 1)").what());
  }
}

void emit(const Json& j, const Globals& g, std::ostream& out) {
  if (g.output.empty() || g.output == "-") {
    out << dump(j);
  } else {
    write_json(j, g.output);
  }
}

void log_kernel(const Kernel& k, const Logger& log) {
  for (const auto& w : k.warnings()) log.warn(w);
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  return std::filesystem::path(csv.string() + ".meta.json");
}

struct SeriesSource {
  std::string input;
  bool header = false;
  bool no_center = false;
};

void add_source(CLI::App* sub, SeriesSource& src) {
  sub->add_option("--input", src.input, "CSV file, one column per component")->required();
  sub->add_flag("--header", src.header, "First line of the CSV is a header");
  sub->add_flag("--no-center", src.no_center, "Skip subtracting the sample mean");
}

struct SmoothingOpts {
  std::string kernel = "bartlett";
  double b_exponent = 0.4;
  double c_const = 1.0;
  std::size_t bandwidth = 0;
};

void add_smoothing(CLI::App* sub, SmoothingOpts& s) {
  sub->add_option("--kernel", s.kernel, "bartlett|parzen|tukey|truncated|file:<path>")->capture_default_str();
  sub->add_option("--b-exponent", s.b_exponent, "Bandwidth exponent b in B = round(c T^b)")->capture_default_str();
  sub->add_option("--c-const", s.c_const, "Bandwidth constant c")->capture_default_str();
  sub->add_option("--bandwidth", s.bandwidth, "Fixed B, overriding the rule");
}

Bandwidth resolve_bandwidth(const SmoothingOpts& s, std::size_t t_len) {
  if (s.bandwidth > 0) return Bandwidth::fixed(s.bandwidth);
  if (!(s.b_exponent > 0.0 && s.b_exponent < 1.0)) throw UsageError("--b-exponent must lie in (0, 1)");
  if (!(s.c_const > 0.0)) throw UsageError("--c-const must be positive");
  return Bandwidth::from_rule(t_len, s.b_exponent, s.c_const);
}

Json bandwidth_json(const Bandwidth& bw) {
  Json j;
  j["value"] = bw.value;
  j["b_exponent"] = std::isnan(bw.b_exponent) ? Json(nullptr) : Json(bw.b_exponent);
  j["c_const"] = std::isnan(bw.c_const) ? Json(nullptr) : Json(bw.c_const);
  return j;
}

Json load_provenance(const std::string& input) {
  const auto meta = sidecar_path(input);
  if (!std::filesystem::exists(meta)) return nullptr;
  return read_json(meta);
}

MultivariateSeries read_series(const SeriesSource& src) {
  auto series = load_csv(src.input, src.header);
  return src.no_center ? series : center(series);
}

// ---- estimate ----

struct EstimateOpts {
  SeriesSource src;
  SmoothingOpts smooth;
  std::string grid = "theorem";
  std::size_t max_lag = 0;
};

std::vector<double> resolve_grid(const std::string& grid, const Bandwidth& bw) {
  if (grid == "theorem") return theorem_grid(bw);
  if (grid.rfind("uniform:", 0) == 0) {
    const auto count = parse_index(std::string_view(grid).substr(8));
    if (count < 2) throw UsageError("uniform grid needs at least 2 points");
    return uniform_grid(count);
  }
  if (grid.rfind("refined:", 0) == 0) {
    const auto factor = parse_index(std::string_view(grid).substr(8));
    if (factor < 1) throw UsageError("refinement factor must be >= 1");
    return refined_grid(bw, factor);
  }
  throw UsageError("--grid must be theorem, uniform:<count> or refined:<factor>");
}

int do_estimate(const EstimateOpts& o, const Globals& g, const Logger& log, std::ostream& out) {
  const auto kernel = Kernel::from_name(o.smooth.kernel);
  log_kernel(kernel, log);
  const auto series = read_series(o.src);
  const auto bw = resolve_bandwidth(o.smooth, series.t_len());
  const auto freqs = resolve_grid(o.grid, bw);
  const std::size_t max_lag = o.max_lag > 0 ? o.max_lag : std::min(bw.value, series.t_len() - 1);
  const auto acov = sample_autocov(series, max_lag);
  const auto grid = estimate_spectrum(acov, kernel, bw, freqs);
  log.info("estimated " + std::to_string(freqs.size()) + " frequencies with B = " + std::to_string(bw.value));

  Json j = to_json(grid);
  Json config;
  config["command"] = "estimate";
  config["input"] = o.src.input;
  config["header"] = o.src.header;
  config["centered"] = !o.src.no_center;
  config["kernel"] = kernel.name();
  config["bandwidth"] = bandwidth_json(bw);
  config["grid"] = o.grid;
  config["max_lag"] = max_lag;
  config["n_dim"] = series.n_dim();
  j["config"] = std::move(config);
  j["provenance"] = load_provenance(o.src.input);
  emit(j, g, out);
  return 0;
}

// ---- bands ----

struct BandsOpts {
  SeriesSource src;
  SmoothingOpts smooth;
  double level = 0.95;
  std::string entries = "all";
  std::string method = "uniform";
  bool bonferroni = false;
  bool assume_smooth = false;
  double b_lower = std::numeric_limits<double>::quiet_NaN();
};

int do_bands(const BandsOpts& o, const Globals& g, const Logger& log, std::ostream& out) {
  check_level(o.level);
  if (o.method != "uniform" && o.method != "pointwise") throw UsageError("--method must be uniform or pointwise");
  const auto kernel = Kernel::from_name(o.smooth.kernel);
  log_kernel(kernel, log);
  const auto series = read_series(o.src);
  const auto entries = parse_entries(o.entries, series.n_dim());
  const auto bw = resolve_bandwidth(o.smooth, series.t_len());
  const auto freqs = theorem_grid(bw);
  const auto acov = sample_autocov(series, std::min(bw.value, series.t_len() - 1));
  const auto est = estimate_spectrum(acov, kernel, bw, freqs);
  const auto band = o.method == "uniform" ? uniform_band(est, kernel, o.level, entries, o.bonferroni)
                                          : pointwise_band(est, kernel, o.level, entries, o.bonferroni);
  Json j = to_json(band, est);
  j["target"] = o.assume_smooth ? "f" : "E f_T";
  Json config;
  config["command"] = "bands";
  config["input"] = o.src.input;
  config["header"] = o.src.header;
  config["centered"] = !o.src.no_center;
  config["kernel"] = kernel.name();
  config["bandwidth"] = bandwidth_json(bw);
  config["entries"] = o.entries;
  config["assume_smooth"] = o.assume_smooth;
  j["config"] = std::move(config);
  if (o.assume_smooth) {
    const double b_lower = std::isnan(o.b_lower) ? o.smooth.b_exponent : o.b_lower;
    const auto check = check_undersmoothing(b_lower, kernel.bias_order().q);
    Json cj;
    cj["b_lower"] = check.b_lower;
    cj["q"] = std::isinf(check.q) ? Json("inf") : std::isnan(check.q) ? Json(nullptr) : Json(check.q);
    cj["b_lower_times_q_plus_1"] = std::isfinite(check.product) ? Json(check.product) : Json("inf");
    cj["satisfied"] = check.satisfied;
    j["undersmoothing"] = std::move(cj);
    std::ostringstream msg;
    msg << "undersmoothing check b_lower (q + 1) = " << check.product << (check.satisfied ? " > 1" : " <= 1");
    if (check.satisfied) {
      log.info(msg.str());
    } else {
      log.warn(msg.str() + ": the band covers E f_T, not f");
    }
  }
  j["min_plugin_eigenvalue"] = min_plugin_eigenvalue(est);
  j["provenance"] = load_provenance(o.src.input);
  emit(j, g, out);
  return 0;
}

// ---- depmeasure ----

struct DepOpts {
  std::string model = "ar1:phi=0.5";
  double p = 2.0;
  std::size_t horizon = 30;
  std::size_t reps = 5000;
  double delta_param = 1.0;
  bool relaxed = false;
  double b = 0.4;
  double b_lower = std::numeric_limits<double>::quiet_NaN();
  std::string report = "json";
};

int do_depmeasure(const DepOpts& o, const Globals& g, const Logger& log, std::ostream& out) {
  if (o.reps < 100) throw UsageError("--reps must be >= 100");
  if (!(o.p >= 1.0)) throw UsageError("--p must be >= 1");
  if (o.report != "json" && o.report != "text") throw UsageError("--report must be json or text");
  const auto model = ProcessModel::parse(o.model);
  const auto prof = profile(model, o.p, o.horizon, o.reps, g.seed, g.threads);
  for (const auto& w : prof.warnings) log.warn(w);
  const double b_lower = std::isnan(o.b_lower) ? o.b : o.b_lower;
  const auto cond = check_conditions(prof, o.p, o.b, b_lower, o.delta_param, o.relaxed);
  if (o.report == "text") {
    std::ostringstream s;
    s.precision(6);
    s << "model " << model.describe() << "  p = " << o.p << "  horizon = " << o.horizon << "\n";
    const auto delta = prof.delta_max();
    for (std::size_t t = 0; t < delta.size(); ++t) s << "delta[" << t << "] = " << delta[t] << "\n";
    s << "Theta_0 = " << prof.theta_max().front() << "\n";
    s << "geometric decay: " << verdict_name(cond.geometric) << " (rho = " << cond.fitted_rho << ")\n";
    s << "alpha1: " << verdict_name(cond.alpha1) << "  alpha2: " << verdict_name(cond.alpha2) << "\n";
    if (g.output.empty() || g.output == "-") {
      out << s.str();
    } else {
      std::ofstream f(g.output);
      if (!f) throw Error(ErrorCode::IoError, "cannot write " + g.output);
      f << s.str();
    }
    return 0;
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json config;
  config["command"] = "depmeasure";
  config["model"] = model.describe();
  config["p"] = o.p;
  config["horizon"] = o.horizon;
  config["reps"] = o.reps;
  config["seed"] = g.seed;
  config["delta_param"] = o.delta_param;
  config["relaxed"] = o.relaxed;
  j["config"] = std::move(config);
  j["profile"] = to_json(prof);
  j["conditions"] = to_json(cond);
  emit(j, g, out);
  return 0;
}

// ---- simulate ----

struct SimOpts {
  std::string model = "ar1:phi=0.5";
  std::size_t t_len = 4096;
};

int do_simulate(const SimOpts& o, const Globals& g, const Logger& log) {
  if (g.output.empty() || g.output == "-") throw UsageError("simulate needs --out <file.csv>");
  if (o.t_len < 2) throw UsageError("--t-len must be >= 2");
  const auto model = ProcessModel::parse(o.model);
  const auto series = simulate(model, o.t_len, g.seed);
  write_csv(series, g.output);
  Json meta;
  meta["schema_version"] = kSchemaVersion;
  meta["command"] = "simulate";
  meta["model"] = o.model;
  meta["model_resolved"] = model.describe();
  meta["t_len"] = o.t_len;
  meta["seed"] = g.seed;
  meta["burn_in"] = burn_in_length(model);
  write_json(meta, sidecar_path(g.output));
  log.info("wrote " + g.output);
  return 0;
}

// ---- verify ----

struct VerifyOpts {
  std::string experiment;
  std::string model = "white";
  std::string kernel = "bartlett";
  std::string t_grid = "4096,16384,65536";
  std::size_t reps = 500;
  double b_exponent = 0.4;
  double c_const = 1.0;
  std::string entry = "0,0";
  std::string entries = "all";
  double level = 0.95;
  bool no_bonferroni = false;
  bool assume_smooth = false;
  double nu = 2.0;
  std::size_t refine = 4;
  std::string freqs;
  std::string bandwidths = "8,16,32,64,128";
  std::size_t bias_t_len = std::size_t{1} << 18;
  double bias_freq = 1.5707963267948966;
  bool retain_raw = false;
  std::string plot_data;
};

int do_verify(const VerifyOpts& o, const Globals& g, const Logger& log, std::ostream& out) {
  check_level(o.level);
  ExperimentPlan plan;
  plan.experiment = as_usage([&] { return parse_experiment(o.experiment); });
  plan.model = ProcessModel::parse(o.model);
  plan.kernel = Kernel::from_name(o.kernel);
  log_kernel(plan.kernel, log);
  plan.t_grid = parse_list<std::size_t>(o.t_grid);
  plan.reps = o.reps;
  plan.seed = g.seed;
  plan.b_exponent = o.b_exponent;
  plan.c_const = o.c_const;
  plan.entry = parse_entry(o.entry);
  plan.entries = parse_entries(o.entries, plan.model.n_dim());
  plan.level = o.level;
  plan.bonferroni = !o.no_bonferroni;
  plan.assume_smooth = o.assume_smooth;
  plan.nu = o.nu;
  plan.refine = o.refine;
  if (!o.freqs.empty()) plan.clt_freqs = parse_list<double>(o.freqs);
  plan.bias_bandwidths = parse_list<std::size_t>(o.bandwidths);
  plan.bias_t_len = o.bias_t_len;
  plan.bias_freq = o.bias_freq;
  plan.retain_raw = o.retain_raw;
  plan.workers = g.threads;
  as_usage([&] {
    validate(plan);
    return 0;
  });
  if (plan.entry.i >= plan.model.n_dim() || plan.entry.j >= plan.model.n_dim()) {
    throw UsageError("--entry outside the model dimension");
  }

  const auto report = run_experiment(plan);
  for (const auto& v : report.verdicts) {
    log.info(v.name + ": " + (v.pass ? "pass" : "fail"));
  }
  emit(to_json(report), g, out);
  if (!o.plot_data.empty()) {
    std::ofstream f(o.plot_data);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + o.plot_data);
    write_plot_data(report, f);
  }
  return 0;
}

// ---- kernel-info ----

int do_kernel_info(const std::string& name, const Globals& g, std::ostream& out) {
  const auto kernel = Kernel::from_name(name);
  const auto& order = kernel.bias_order();
  std::ostringstream s;
  s.precision(10);
  s << "name: " << kernel.name() << "\n";
  s << "kappa: " << kernel.kappa() << "\n";
  s << "q: " << order.q << "\n";
  s << "K_q: ";
  if (order.k_q) {
    s << *order.k_q;
  } else {
    s << "n/a";
  }
  s << "\n";
  if (order.expansion_q) s << "q from expanding 1 - K(x): " << *order.expansion_q << "\n";
  if (!order.note.empty()) s << "note: " << order.note << "\n";
  s << "psd_guarantee: " << (kernel.psd_guarantee() ? "true" : "false") << "\n";
  for (const auto& w : kernel.warnings()) s << "warning: " << w << "\n";
  out << s.str();
  if (!g.output.empty() && g.output != "-") write_json(to_json(kernel), g.output);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lag-window spectral density estimation, confidence bands and verification"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--output,--out", g.output, "Output path (default stdout)");
  app.add_option("--log-level", g.log_level, "error|warn|info|debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}))
      ->capture_default_str();

  EstimateOpts est;
  auto* estimate = app.add_subcommand("estimate", "Lag-window spectral matrix estimate");
  add_source(estimate, est.src);
  add_smoothing(estimate, est.smooth);
  estimate->add_option("--grid", est.grid, "theorem | uniform:<count> | refined:<factor>")->capture_default_str();
  estimate->add_option("--max-lag", est.max_lag, "Autocovariance lags to compute (default B)");

  BandsOpts bands;
  auto* bands_cmd = app.add_subcommand("bands", "Uniform or pointwise confidence bands");
  add_source(bands_cmd, bands.src);
  add_smoothing(bands_cmd, bands.smooth);
  bands_cmd->add_option("--level", bands.level, "Nominal level in (0, 1)")->capture_default_str();
  bands_cmd->add_option("--entries", bands.entries, "all | diag | i,j;i,j;...")->capture_default_str();
  bands_cmd->add_option("--method", bands.method, "uniform | pointwise")->capture_default_str();
  bands_cmd->add_flag("--bonferroni", bands.bonferroni, "Split the error budget over entries");
  bands_cmd->add_flag("--assume-smooth", bands.assume_smooth, "Report the band as a band for f");
  bands_cmd->add_option("--b-lower", bands.b_lower, "Lower bandwidth exponent for the undersmoothing check");

  DepOpts dep;
  auto* dep_cmd = app.add_subcommand("depmeasure", "Coupled dependence measures and decay conditions");
  dep_cmd->add_option("--model", dep.model, "Model, e.g. ar1:phi=0.5 or var1")->capture_default_str();
  dep_cmd->add_option("--p", dep.p, "Moment order")->capture_default_str();
  dep_cmd->add_option("--horizon", dep.horizon, "Largest lag t")->capture_default_str();
  dep_cmd->add_option("--reps", dep.reps, "Coupling replications")->capture_default_str();
  dep_cmd->add_option("--delta-param", dep.delta_param, "Exponent parameter of the decay thresholds")
      ->capture_default_str();
  dep_cmd->add_flag("--relaxed", dep.relaxed, "Components mutually independent");
  dep_cmd->add_option("--b", dep.b, "Bandwidth exponent b")->capture_default_str();
  dep_cmd->add_option("--b-lower", dep.b_lower, "Lower bandwidth exponent (default b)");
  dep_cmd->add_option("--report", dep.report, "json | text")->capture_default_str();

  SimOpts sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate a model to CSV with a metadata sidecar");
  sim_cmd->add_option("--model", sim.model, "Model, e.g. ar1:phi=0.5 or var1")->capture_default_str();
  sim_cmd->add_option("--t-len,-T", sim.t_len, "Observations")->capture_default_str();

  VerifyOpts ver;
  auto* ver_cmd = app.add_subcommand("verify", "Monte Carlo verification experiments");
  ver_cmd->add_option("--experiment", ver.experiment, "clt|gumbel|moments|uniform-rate|bias-rate|coverage")
      ->required();
  ver_cmd->add_option("--model", ver.model, "Model, e.g. ar1:phi=0.5 or var1")->capture_default_str();
  ver_cmd->add_option("--kernel", ver.kernel, "Kernel")->capture_default_str();
  ver_cmd->add_option("--t-grid", ver.t_grid, "Comma-separated sample sizes")->capture_default_str();
  ver_cmd->add_option("--reps", ver.reps, "Replications per cell (>= 100)")->capture_default_str();
  ver_cmd->add_option("--b-exponent", ver.b_exponent, "Bandwidth exponent")->capture_default_str();
  ver_cmd->add_option("--c-const", ver.c_const, "Bandwidth constant")->capture_default_str();
  ver_cmd->add_option("--entry", ver.entry, "Matrix entry i,j")->capture_default_str();
  ver_cmd->add_option("--entries", ver.entries, "Coverage entries: all | diag | i,j;...")->capture_default_str();
  ver_cmd->add_option("--level", ver.level, "Coverage level")->capture_default_str();
  ver_cmd->add_flag("--no-bonferroni", ver.no_bonferroni, "Do not split the level over entries");
  ver_cmd->add_flag("--assume-smooth", ver.assume_smooth, "Coverage of f instead of E f_T");
  ver_cmd->add_option("--nu", ver.nu, "Moment order")->capture_default_str();
  ver_cmd->add_option("--refine", ver.refine, "Grid refinement for uniform-rate")->capture_default_str();
  ver_cmd->add_option("--freqs", ver.freqs, "CLT frequencies, comma-separated");
  ver_cmd->add_option("--bandwidths", ver.bandwidths, "Bias-rate bandwidths")->capture_default_str();
  ver_cmd->add_option("--bias-t-len", ver.bias_t_len, "Bias-rate sample size")->capture_default_str();
  ver_cmd->add_option("--bias-freq", ver.bias_freq, "Bias-rate frequency")->capture_default_str();
  ver_cmd->add_flag("--retain-raw", ver.retain_raw, "Keep per-replication statistics in the report");
  ver_cmd->add_option("--plot-data", ver.plot_data, "Long-format CSV for plotting");

  std::string kernel_name = "bartlett";
  auto* kinfo = app.add_subcommand("kernel-info", "Print kernel constants");
  kinfo->add_option("--kernel", kernel_name, "Kernel")->capture_default_str();

  for (auto* sub : {estimate, bands_cmd, dep_cmd, sim_cmd, ver_cmd, kinfo}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  const Logger log(err, parse_log_level(g.log_level));
  try {
    if (*estimate) return do_estimate(est, g, log, out);
    if (*bands_cmd) return do_bands(bands, g, log, out);
    if (*dep_cmd) return do_depmeasure(dep, g, log, out);
    if (*sim_cmd) return do_simulate(sim, g, log);
    if (*ver_cmd) return do_verify(ver, g, log, out);
    if (*kinfo) return do_kernel_info(kernel_name, g, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace lagspec
