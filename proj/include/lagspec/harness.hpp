#pragma once

#include "lagspec/inference.hpp"
#include "lagspec/kernels.hpp"
#include "lagspec/model.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lagspec {

enum class Experiment { clt, gumbel, moments, uniform_rate, bias_rate, coverage };
std::string_view experiment_name(Experiment e) noexcept;
// Accepts both "uniform-rate" and "uniform_rate" spellings.
Experiment parse_experiment(std::string_view name);

struct ExperimentPlan {
  ProcessModel model = ProcessModel::white_noise(1);
  Kernel kernel = Kernel::bartlett();
  std::vector<std::size_t> t_grid{4096, 16384, 65536};
  double b_exponent = 0.4;
  double c_const = 1.0;
  std::size_t reps = 500;
  std::uint64_t seed = 1;
  Experiment experiment = Experiment::gumbel;

  EntryIndex entry{0, 0};          // clt, gumbel, moments, uniform_rate
  std::vector<EntryIndex> entries;  // coverage; empty means all i <= j
  double level = 0.95;              // coverage
  bool bonferroni = true;           // coverage
  bool assume_smooth = false;       // coverage target f instead of E f_T
  double nu = 2.0;                  // moments (nu*) and uniform_rate (nu)
  std::size_t refine = 4;           // uniform_rate grid refinement
  std::vector<double> clt_freqs{0.0, 1.5707963267948966};
  std::vector<std::size_t> bias_bandwidths{8, 16, 32, 64, 128};
  double bias_freq = 1.5707963267948966;
  std::size_t bias_t_len = std::size_t{1} << 18;
  bool retain_raw = false;
  std::size_t workers = 1;  // not part of the report
};

// Throws InvalidArgument for reps < 100, a non-increasing t_grid or a
// bandwidth exponent outside (0, 1).
void validate(const ExperimentPlan& plan);

struct Metric {
  std::string name;
  double value = 0.0;
  double se = 0.0;  // 0 for exact quantities
};

struct Cell {
  std::size_t t_len = 0;
  std::size_t bandwidth = 0;
  std::vector<Metric> metrics;
  std::map<std::string, std::vector<double>> raw;

  const Metric& metric(std::string_view name) const;
  double value(std::string_view name) const { return metric(name).value; }
};

struct VerdictLine {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=", ">=", "in", "decreasing", ...
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;
};

struct ExperimentReport {
  ExperimentPlan plan;
  std::vector<Cell> cells;
  std::vector<Metric> summary;
  std::vector<VerdictLine> verdicts;

  const Metric& summary_metric(std::string_view name) const;
  bool all_pass() const;
};

ExperimentReport run_clt(const ExperimentPlan& plan);
ExperimentReport run_gumbel(const ExperimentPlan& plan);
ExperimentReport run_moments(const ExperimentPlan& plan);
ExperimentReport run_uniform_rate(const ExperimentPlan& plan);
ExperimentReport run_bias_rate(const ExperimentPlan& plan);
ExperimentReport run_coverage(const ExperimentPlan& plan);
ExperimentReport run_experiment(const ExperimentPlan& plan);

// True when every element is strictly below its predecessor.
bool strictly_decreasing(const std::vector<double>& values);

// Metric-name suffix for a frequency, e.g. "@1.5708".
std::string freq_tag(double lambda);

}  // namespace lagspec
