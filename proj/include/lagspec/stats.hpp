#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lagspec {

// Neumaier-compensated sum in index order.
double compensated_sum(std::span<const double> values);

struct SampleSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double se = 0.0;        // standard error of the mean
};
SampleSummary summarize(std::span<const double> values);

// sup_x |F_n(x) - F(x)| for the empirical cdf of `sample`.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

double standard_normal_cdf(double x);

// Ordinary least squares y = intercept + slope x.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double slope_se = 0.0;  // NaN with fewer than 3 points
  double sse = 0.0;
  std::size_t count = 0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Two-sided Student-t quantile used for fit confidence limits.
double student_t_quantile(double p, double dof);

// (mean |x|^nu)^{1/nu} with a delta-method standard error.
struct NormEstimate {
  double value = 0.0;
  double se = 0.0;
};
NormEstimate lp_norm(std::span<const double> values, double nu);

}  // namespace lagspec
