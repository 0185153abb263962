#include "lagspec/stats.hpp"

#include "lagspec/error.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lagspec {

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (const double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

SampleSummary summarize(std::span<const double> values) {
  SampleSummary s;
  s.count = values.size();
  if (s.count == 0) return s;
  s.mean = compensated_sum(values) / static_cast<double>(s.count);
  if (s.count < 2) return s;
  std::vector<double> sq(values.size());
  std::transform(values.begin(), values.end(), sq.begin(), [m = s.mean](double v) { return (v - m) * (v - m); });
  s.variance = compensated_sum(sq) / static_cast<double>(s.count - 1);
  s.se = std::sqrt(s.variance / static_cast<double>(s.count));
  return s;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw Error(ErrorCode::InvalidArgument, "KS distance of an empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < sample.size(); ++k) {
    const double f = cdf(sample[k]);
    worst = std::max({worst, static_cast<double>(k + 1) / n - f, f - static_cast<double>(k) / n});
  }
  return worst;
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "line fit needs at least two (x, y) pairs");
  }
  LineFit fit;
  fit.count = x.size();
  const double n = static_cast<double>(x.size());
  const double mx = compensated_sum(x) / n;
  const double my = compensated_sum(y) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::InvalidArgument, "line fit needs distinct x values");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - fit.intercept - fit.slope * x[k];
    fit.sse += r * r;
  }
  fit.slope_se = x.size() > 2 ? std::sqrt(fit.sse / (n - 2.0) / sxx)
                              : std::numeric_limits<double>::quiet_NaN();
  return fit;
}

double student_t_quantile(double p, double dof) {
  return boost::math::quantile(boost::math::students_t_distribution<double>(dof), p);
}

NormEstimate lp_norm(std::span<const double> values, double nu) {
  if (values.empty() || !(nu > 0.0)) throw Error(ErrorCode::InvalidArgument, "norm of an empty sample");
  std::vector<double> powers(values.size());
  std::transform(values.begin(), values.end(), powers.begin(),
                 [nu](double v) { return std::pow(std::abs(v), nu); });
  const auto s = summarize(powers);
  NormEstimate out;
  out.value = std::pow(s.mean, 1.0 / nu);
  out.se = s.mean > 0.0 ? out.value / (nu * s.mean) * s.se : 0.0;
  return out;
}

}  // namespace lagspec
