#include "lagspec/harness.hpp"

#include "lagspec/acov.hpp"
#include "lagspec/dependence.hpp"
#include "lagspec/error.hpp"
#include "lagspec/parallel.hpp"
#include "lagspec/spectral.hpp"
#include "lagspec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

namespace lagspec {

namespace {

struct Replicate {
  SpectralGrid estimate;
};

SpectralGrid replicate_estimate(const ExperimentPlan& plan, std::size_t t_len, const Bandwidth& bw,
                                const std::vector<double>& freqs, std::size_t rep) {
  Rng rng = make_stream(plan.seed, {t_len, rep});
  const auto series = simulate(plan.model, t_len, rng);
  const auto acov = sample_autocov(series, std::min(bw.value, t_len - 1));
  return estimate_spectrum(acov, plan.kernel, bw, freqs);
}

void require_closed_form(const ProcessModel& model) {
  if (!model.has_closed_form()) {
    throw Error(ErrorCode::UnsupportedModel,
                std::string(model.kind_name()) + " has no closed-form oracle for this experiment");
  }
}

void check_entry(const ExperimentPlan& plan, EntryIndex e) {
  if (e.i >= plan.model.n_dim() || e.j >= plan.model.n_dim()) {
    throw Error(ErrorCode::InvalidArgument, "entry outside the model dimension");
  }
}

ExperimentReport start(const ExperimentPlan& plan, Experiment expected) {
  validate(plan);
  ExperimentPlan copy = plan;
  copy.experiment = expected;
  return ExperimentReport{std::move(copy), {}, {}, {}};
}

VerdictLine at_most(std::string name, double value, double bound) {
  return VerdictLine{std::move(name), value, "<=", bound, bound, value <= bound};
}

VerdictLine at_least(std::string name, double value, double bound) {
  return VerdictLine{std::move(name), value, ">=", bound, bound, value >= bound};
}

VerdictLine within(std::string name, double value, double lower, double upper) {
  return VerdictLine{std::move(name), value, "in", lower, upper, value >= lower && value <= upper};
}

VerdictLine decreasing(std::string name, const std::vector<double>& values) {
  return VerdictLine{std::move(name), values.empty() ? 0.0 : values.back(), "decreasing", 0.0, 0.0,
                     strictly_decreasing(values)};
}

std::vector<double> column(const std::vector<Cell>& cells, std::string_view metric, bool absolute = false) {
  std::vector<double> out;
  for (const auto& c : cells) out.push_back(absolute ? std::abs(c.value(metric)) : c.value(metric));
  return out;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// se of a sample variance from the fourth central moment.
double variance_se(const std::vector<double>& v, double mean, double var) {
  std::vector<double> q(v.size());
  std::transform(v.begin(), v.end(), q.begin(), [mean](double x) { return std::pow(x - mean, 4); });
  const double m4 = compensated_sum(q) / static_cast<double>(v.size());
  return std::sqrt(std::max(m4 - var * var, 0.0) / static_cast<double>(v.size()));
}

struct MaxSample {
  std::size_t bandwidth = 0;
  std::vector<double> raw;
  std::vector<double> centered;
};

MaxSample collect_max(const ExperimentPlan& plan, std::size_t t_len) {
  const auto bw = Bandwidth::from_rule(t_len, plan.b_exponent, plan.c_const);
  const auto freqs = theorem_grid(bw);
  const auto center = expected_spectrum(plan.model, plan.kernel, bw, t_len, freqs);
  const auto denom = true_spectrum(plan.model, freqs);
  MaxSample out;
  out.bandwidth = bw.value;
  out.raw.resize(plan.reps);
  out.centered.resize(plan.reps);
  parallel_for(plan.reps, plan.workers, [&](std::size_t rep) {
    const auto est = replicate_estimate(plan, t_len, bw, freqs, rep);
    const auto stat = max_deviation(est, center, denom, plan.kernel, plan.entry, CenterMode::oracle_mean);
    out.raw[rep] = stat.raw_max;
    out.centered[rep] = stat.centered;
  });
  return out;
}

}  // namespace

std::string_view experiment_name(Experiment e) noexcept {
  switch (e) {
    case Experiment::clt: return "clt";
    case Experiment::gumbel: return "gumbel";
    case Experiment::moments: return "moments";
    case Experiment::uniform_rate: return "uniform-rate";
    case Experiment::bias_rate: return "bias-rate";
    case Experiment::coverage: return "coverage";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '_', '-');
  for (const auto e : {Experiment::clt, Experiment::gumbel, Experiment::moments, Experiment::uniform_rate,
                       Experiment::bias_rate, Experiment::coverage}) {
    if (s == experiment_name(e)) return e;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown experiment '" + std::string(name) + "'");
}

std::string freq_tag(double lambda) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "@%.4f", lambda);
  return buf;
}

bool strictly_decreasing(const std::vector<double>& values) {
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (!(values[k] < values[k - 1])) return false;
  }
  return true;
}

void validate(const ExperimentPlan& plan) {
  if (plan.reps < 100) {
    throw Error(ErrorCode::InvalidArgument, "reps = " + std::to_string(plan.reps) + " is below the floor of 100");
  }
  if (plan.t_grid.empty()) throw Error(ErrorCode::InvalidArgument, "t_grid is empty");
  for (std::size_t k = 0; k < plan.t_grid.size(); ++k) {
    if (plan.t_grid[k] < 8) throw Error(ErrorCode::InvalidArgument, "t_grid values must be >= 8");
    if (k > 0 && plan.t_grid[k] <= plan.t_grid[k - 1]) {
      throw Error(ErrorCode::InvalidArgument, "t_grid must be strictly increasing");
    }
  }
  if (!(plan.b_exponent > 0.0 && plan.b_exponent < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "b_exponent must lie in (0, 1)");
  }
  if (!(plan.c_const > 0.0)) throw Error(ErrorCode::InvalidArgument, "c_const must be positive");
  if (!(plan.nu >= 1.0)) throw Error(ErrorCode::InvalidArgument, "nu must be >= 1");
  if (!(plan.level > 0.0 && plan.level < 1.0)) throw Error(ErrorCode::InvalidLevel, "level must lie in (0, 1)");
  if (plan.refine < 1) throw Error(ErrorCode::InvalidArgument, "refine must be >= 1");
}

const Metric& Cell::metric(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "no metric '" + std::string(name) + "'");
}

const Metric& ExperimentReport::summary_metric(std::string_view name) const {
  for (const auto& m : summary) {
    if (m.name == name) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "no summary metric '" + std::string(name) + "'");
}

bool ExperimentReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const VerdictLine& v) { return v.pass; });
}

ExperimentReport run_clt(const ExperimentPlan& plan) {
  auto report = start(plan, Experiment::clt);
  require_closed_form(plan.model);
  check_entry(plan, plan.entry);
  const auto [ei, ej] = plan.entry;
  const bool cross = ei != ej;
  const auto& freqs = plan.clt_freqs;
  const double kappa = plan.kernel.kappa();

  for (const std::size_t t_len : plan.t_grid) {
    const auto bw = Bandwidth::from_rule(t_len, plan.b_exponent, plan.c_const);
    const auto mean = expected_spectrum(plan.model, plan.kernel, bw, t_len, freqs);
    const auto truth = true_spectrum(plan.model, freqs);
    const double root = std::sqrt(static_cast<double>(t_len) / static_cast<double>(bw.value));

    // dev[k][rep]: sqrt(T/B) (f_T - E f_T) / sqrt(kappa f_ii f_jj), no omega.
    std::vector<std::vector<std::complex<double>>> dev(freqs.size(), std::vector<std::complex<double>>(plan.reps));
    parallel_for(plan.reps, plan.workers, [&](std::size_t rep) {
      const auto est = replicate_estimate(plan, t_len, bw, freqs, rep);
      for (std::size_t k = 0; k < freqs.size(); ++k) {
        const double scale = std::sqrt(kappa * truth.entry(k, ei, ei).real() * truth.entry(k, ej, ej).real());
        dev[k][rep] = root * (est.entry(k, ei, ej) - mean.entry(k, ei, ej)) / scale;
      }
    });

    Cell cell{t_len, bw.value, {}, {}};
    std::vector<double> second;
    std::vector<double> second_se;
    for (std::size_t k = 0; k < freqs.size(); ++k) {
      const double w = omega(freqs[k]);
      // Cross spectra: the complex deviation is read as circular, so each
      // part carries half of omega kappa f_ii f_jj.
      const double part = cross ? std::sqrt(w / 2.0) : std::sqrt(w);
      std::vector<double> re(plan.reps);
      std::vector<double> im(plan.reps);
      for (std::size_t r = 0; r < plan.reps; ++r) {
        re[r] = dev[k][r].real();
        im[r] = dev[k][r].imag();
      }
      const auto tag = freq_tag(freqs[k]);
      std::vector<double> re_std(re);
      for (auto& v : re_std) v /= part;
      cell.metrics.push_back({"ks_re" + tag, ks_distance(re_std, standard_normal_cdf), 0.0});
      if (cross && w == 1.0) {
        std::vector<double> im_std(im);
        for (auto& v : im_std) v /= part;
        cell.metrics.push_back({"ks_im" + tag, ks_distance(im_std, standard_normal_cdf), 0.0});
      }
      if (cross) {
        const auto s = summarize(im);
        cell.metrics.push_back({"mean_im" + tag, s.mean, s.se});
      }
      const auto s = summarize(re);
      double var = s.variance;
      double var_se = variance_se(re, s.mean, s.variance);
      if (cross) {
        std::vector<double> mod(plan.reps);
        for (std::size_t r = 0; r < plan.reps; ++r) mod[r] = std::norm(dev[k][r]);
        const auto m = summarize(mod);
        var = m.mean;
        var_se = m.se;
      }
      cell.metrics.push_back({"var" + tag, var, var_se});
      second.push_back(var);
      second_se.push_back(var_se);
      if (plan.retain_raw) {
        cell.raw["re" + tag] = re;
        if (cross) cell.raw["im" + tag] = im;
      }
    }
    if (freqs.size() >= 2 && second[1] > 0.0) {
      const double ratio = second[0] / second[1];
      const double rel = std::hypot(second_se[0] / second[0], second_se[1] / second[1]);
      cell.metrics.push_back({"var_ratio", ratio, ratio * rel});
    }
    report.cells.push_back(std::move(cell));
  }

  const auto& last = report.cells.back();
  for (const double f : freqs) {
    if (omega(f) == 1.0) {
      report.verdicts.push_back(at_most("ks_re" + freq_tag(f), last.value("ks_re" + freq_tag(f)), 0.05));
    }
    if (cross) {
      const auto& m = last.metric("mean_im" + freq_tag(f));
      report.verdicts.push_back(at_most("abs_mean_im_over_se" + freq_tag(f),
                                        m.se > 0.0 ? std::abs(m.value) / m.se : 0.0, 4.0));
    }
  }
  if (freqs.size() >= 2 && omega(freqs[0]) == 2.0 && omega(freqs[1]) == 1.0) {
    report.verdicts.push_back(within("var_ratio", last.value("var_ratio"), 1.6, 2.4));
  }
  return report;
}

ExperimentReport run_gumbel(const ExperimentPlan& plan) {
  auto report = start(plan, Experiment::gumbel);
  require_closed_form(plan.model);
  check_entry(plan, plan.entry);
  double raw_min = std::numeric_limits<double>::infinity();
  for (const std::size_t t_len : plan.t_grid) {
    auto sample = collect_max(plan, t_len);
    Cell cell{t_len, sample.bandwidth, {}, {}};
    const auto s = summarize(sample.centered);
    cell.metrics.push_back({"ks", ks_distance(sample.centered, gumbel_cdf), 0.0});
    cell.metrics.push_back({"mean", s.mean, s.se});
    cell.metrics.push_back({"sd", std::sqrt(s.variance), 0.0});
    cell.metrics.push_back({"median", median_of(sample.centered), 0.0});
    const double lowest = *std::min_element(sample.raw.begin(), sample.raw.end());
    cell.metrics.push_back({"raw_min", lowest, 0.0});
    raw_min = std::min(raw_min, lowest);
    if (plan.retain_raw) {
      cell.raw["centered"] = std::move(sample.centered);
      cell.raw["raw_max"] = std::move(sample.raw);
    }
    report.cells.push_back(std::move(cell));
  }
  report.summary.push_back({"limit_median", gumbel_quantile(0.5), 0.0});
  report.summary.push_back({"limit_mean", gumbel_mean(), 0.0});
  report.summary.push_back({"limit_sd", 2.0 * std::numbers::pi / std::sqrt(6.0), 0.0});

  const auto& last = report.cells.back();
  report.verdicts.push_back(at_most("ks_final", last.value("ks"), 0.20));
  if (report.cells.size() > 1) report.verdicts.push_back(decreasing("ks_trend", column(report.cells, "ks")));
  report.verdicts.push_back(within("mean_final", last.value("mean"), 0.55, 1.75));
  report.verdicts.push_back(at_least("raw_min", raw_min, 0.0));
  return report;
}

ExperimentReport run_moments(const ExperimentPlan& plan) {
  auto report = start(plan, Experiment::moments);
  require_closed_form(plan.model);
  check_entry(plan, plan.entry);
  const double target = gumbel_abs_moment(plan.nu);
  const double mean_target = gumbel_mean();
  for (const std::size_t t_len : plan.t_grid) {
    auto sample = collect_max(plan, t_len);
    Cell cell{t_len, sample.bandwidth, {}, {}};
    const auto norm = lp_norm(sample.centered, plan.nu);
    const auto s = summarize(sample.centered);
    cell.metrics.push_back({"norm", norm.value, norm.se});
    cell.metrics.push_back({"norm_gap", norm.value - target, norm.se});
    cell.metrics.push_back({"norm_rel_gap", (norm.value - target) / target, norm.se / target});
    cell.metrics.push_back({"mean", s.mean, s.se});
    cell.metrics.push_back({"mean_gap", s.mean - mean_target, s.se});
    if (plan.retain_raw) cell.raw["centered"] = std::move(sample.centered);
    report.cells.push_back(std::move(cell));
  }
  report.summary.push_back({"limit_norm", target, 0.0});
  report.summary.push_back({"limit_mean", mean_target, 0.0});

  const auto& last = report.cells.back();
  report.verdicts.push_back(at_most("abs_norm_rel_gap_final", std::abs(last.value("norm_rel_gap")), 0.30));
  report.verdicts.push_back(within("mean_final", last.value("mean"), 0.55, 1.75));
  if (report.cells.size() > 1) {
    report.verdicts.push_back(decreasing("abs_norm_gap_trend", column(report.cells, "norm_gap", true)));
    report.verdicts.push_back(decreasing("abs_mean_gap_trend", column(report.cells, "mean_gap", true)));
  }
  return report;
}

ExperimentReport run_uniform_rate(const ExperimentPlan& plan) {
  auto report = start(plan, Experiment::uniform_rate);
  require_closed_form(plan.model);
  check_entry(plan, plan.entry);
  const auto [ei, ej] = plan.entry;
  std::vector<double> rates;
  for (const std::size_t t_len : plan.t_grid) {
    const auto bw = Bandwidth::from_rule(t_len, plan.b_exponent, plan.c_const);
    const auto freqs = refined_grid(bw, plan.refine);
    const auto mean = expected_spectrum(plan.model, plan.kernel, bw, t_len, freqs);
    std::vector<double> sup(plan.reps);
    parallel_for(plan.reps, plan.workers, [&](std::size_t rep) {
      const auto est = replicate_estimate(plan, t_len, bw, freqs, rep);
      double worst = 0.0;
      for (std::size_t l = 0; l < freqs.size(); ++l) {
        worst = std::max(worst, std::abs(est.entry(l, ei, ej) - mean.entry(l, ei, ej)));
      }
      sup[rep] = worst;
    });
    const double b = static_cast<double>(bw.value);
    const double rate = std::sqrt(b * std::log(b) / static_cast<double>(t_len));
    const auto norm = lp_norm(sup, plan.nu);
    Cell cell{t_len, bw.value, {}, {}};
    cell.metrics.push_back({"sup_norm", norm.value, norm.se});
    cell.metrics.push_back({"rate", rate, 0.0});
    cell.metrics.push_back({"r", norm.value / rate, norm.se / rate});
    rates.push_back(norm.value / rate);
    if (plan.retain_raw) cell.raw["sup_deviation"] = std::move(sup);
    report.cells.push_back(std::move(cell));
  }
  const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
  report.summary.push_back({"r_max_over_min", *hi / *lo, 0.0});
  report.verdicts.push_back(at_most("r_max_over_min", *hi / *lo, 2.0));
  report.verdicts.push_back(VerdictLine{"r_positive", *lo, ">", 0.0, 0.0, *lo > 0.0});
  return report;
}

ExperimentReport run_bias_rate(const ExperimentPlan& plan) {
  auto report = start(plan, Experiment::bias_rate);
  require_closed_form(plan.model);
  check_entry(plan, plan.entry);
  const auto [ei, ej] = plan.entry;
  const std::size_t t_len = plan.bias_t_len;
  const double lambda = plan.bias_freq;
  const std::vector<double> at{lambda};
  const auto f = true_spectrum(plan.model, at).entry(0, ei, ej);

  std::vector<double> log_b;
  std::vector<double> log_total;
  std::vector<double> log_smooth;
  std::vector<double> totals;
  for (const std::size_t b : plan.bias_bandwidths) {
    const auto bw = Bandwidth::fixed(b);
    const auto mean = expected_spectrum(plan.model, plan.kernel, bw, t_len, at).entry(0, ei, ej);
    // Lag-window sum of Gamma(u) itself: the T -> infinity limit of E f_T.
    std::complex<double> limit = plan.model.autocov(0)(ei, ej);
    const std::size_t top = std::min(b, t_len - 1);
    for (std::size_t u = 1; u <= top; ++u) {
      const double w = plan.kernel(static_cast<double>(u) / static_cast<double>(b));
      const double ul = static_cast<double>(u) * lambda;
      const double gp = plan.model.autocov(static_cast<long>(u))(ei, ej);
      const double gm = plan.model.autocov(-static_cast<long>(u))(ei, ej);
      limit += w * (std::polar(1.0, -ul) * gp + std::polar(1.0, ul) * gm);
    }
    limit /= 2.0 * std::numbers::pi;
    const double total = std::abs(mean - f);
    const double smooth = std::abs(limit - f);
    const double divisor = std::abs(mean - limit);
    Cell cell{t_len, b, {}, {}};
    cell.metrics.push_back({"bias", total, 0.0});
    cell.metrics.push_back({"bias_smoothing", smooth, 0.0});
    cell.metrics.push_back({"bias_divisor", divisor, 0.0});
    cell.metrics.push_back({"f_true", std::abs(f), 0.0});
    cell.metrics.push_back({"relative_bias", total / std::abs(f), 0.0});
    report.cells.push_back(std::move(cell));
    totals.push_back(total);
    log_b.push_back(std::log(static_cast<double>(b)));
    log_total.push_back(std::log(std::max(total, std::numeric_limits<double>::min())));
    log_smooth.push_back(std::log(std::max(smooth, std::numeric_limits<double>::min())));
  }
  if (log_b.size() >= 2) {
    report.summary.push_back({"slope", fit_line(log_b, log_total).slope, 0.0});
    report.summary.push_back({"slope_smoothing", fit_line(log_b, log_smooth).slope, 0.0});
  }
  const auto& order = plan.kernel.bias_order();
  report.summary.push_back({"q_quoted", order.q, 0.0});
  if (order.expansion_q) report.summary.push_back({"q_expansion", *order.expansion_q, 0.0});

  if (std::isinf(order.q)) {
    for (const auto& cell : report.cells) {
      if (cell.bandwidth == 64) {
        report.verdicts.push_back(at_most("relative_bias@B=64", cell.value("relative_bias"), 1e-6));
      }
    }
  } else if (log_b.size() >= 2) {
    report.verdicts.push_back(at_most("slope", report.summary_metric("slope").value, -0.7));
    report.verdicts.push_back(decreasing("bias_trend", totals));
  }
  return report;
}

ExperimentReport run_coverage(const ExperimentPlan& plan) {
  auto report = start(plan, Experiment::coverage);
  require_closed_form(plan.model);
  auto entries = plan.entries;
  if (entries.empty()) {
    for (std::size_t i = 0; i < plan.model.n_dim(); ++i) {
      for (std::size_t j = i; j < plan.model.n_dim(); ++j) entries.push_back({i, j});
    }
  }
  for (const auto& e : entries) check_entry(plan, e);
  report.plan.entries = entries;

  std::vector<double> joint_cov;
  std::vector<double> joint_se;
  for (const std::size_t t_len : plan.t_grid) {
    const auto bw = Bandwidth::from_rule(t_len, plan.b_exponent, plan.c_const);
    const auto freqs = theorem_grid(bw);
    const auto target = plan.assume_smooth ? true_spectrum(plan.model, freqs)
                                           : expected_spectrum(plan.model, plan.kernel, bw, t_len, freqs);
    std::vector<std::vector<double>> covered(entries.size(), std::vector<double>(plan.reps, 0.0));
    std::vector<double> joint(plan.reps, 0.0);
    std::vector<double> degenerate(plan.reps, 0.0);
    parallel_for(plan.reps, plan.workers, [&](std::size_t rep) {
      const auto est = replicate_estimate(plan, t_len, bw, freqs, rep);
      BandResult band;
      try {
        band = uniform_band(est, plan.kernel, plan.level, entries, plan.bonferroni);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateSpectrum) throw;
        degenerate[rep] = 1.0;
        return;
      }
      bool all = true;
      for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto [i, j] = entries[k];
        bool inside = true;
        for (std::size_t l = 0; l < freqs.size() && inside; ++l) {
          inside = std::abs(est.entry(l, i, j) - target.entry(l, i, j)) <= band.entries[k].half_width[l];
        }
        covered[k][rep] = inside ? 1.0 : 0.0;
        all = all && inside;
      }
      joint[rep] = all ? 1.0 : 0.0;
    });
    Cell cell{t_len, bw.value, {}, {}};
    const double n = static_cast<double>(plan.reps);
    const auto binomial = [n](double p) { return std::sqrt(p * (1.0 - p) / n); };
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const double p = compensated_sum(covered[k]) / n;
      cell.metrics.push_back({"coverage(" + std::to_string(entries[k].i) + "," + std::to_string(entries[k].j) + ")",
                              p, binomial(p)});
    }
    const double pj = compensated_sum(joint) / n;
    cell.metrics.push_back({"joint_coverage", pj, binomial(pj)});
    cell.metrics.push_back({"degenerate_fraction", compensated_sum(degenerate) / n, 0.0});
    joint_cov.push_back(pj);
    joint_se.push_back(binomial(pj));
    if (plan.retain_raw) cell.raw["joint_covered"] = std::move(joint);
    report.cells.push_back(std::move(cell));
  }

  const double final_cov = joint_cov.back();
  if (std::abs(plan.level - 0.95) < 1e-12) {
    report.verdicts.push_back(at_least("joint_coverage_final", final_cov, 0.90));
  } else if (std::abs(plan.level - 0.5) < 1e-12) {
    report.verdicts.push_back(within("joint_coverage_final", final_cov, 0.35, 0.70));
  }
  if (joint_cov.size() > 1) {
    // Increasing up to Monte Carlo noise: no drop larger than 2 combined se.
    bool ok = true;
    for (std::size_t k = 1; k < joint_cov.size(); ++k) {
      ok = ok && joint_cov[k] >= joint_cov[k - 1] - 2.0 * std::hypot(joint_se[k], joint_se[k - 1]);
    }
    report.verdicts.push_back(VerdictLine{"joint_coverage_trend", final_cov, "nondecreasing", 0.0, 0.0, ok});
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentPlan& plan) {
  switch (plan.experiment) {
    case Experiment::clt: return run_clt(plan);
    case Experiment::gumbel: return run_gumbel(plan);
    case Experiment::moments: return run_moments(plan);
    case Experiment::uniform_rate: return run_uniform_rate(plan);
    case Experiment::bias_rate: return run_bias_rate(plan);
    case Experiment::coverage: return run_coverage(plan);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown experiment");
}

}  // namespace lagspec
