#include "oracles.hpp"

#include "lagspec/stats.hpp"

#include <doctest.h>

#include <algorithm>

using namespace lagspec;

TEST_CASE("compensated sum keeps small terms") {
  std::vector<double> v{1e16, 1.0, -1e16, 1.0};
  CHECK(compensated_sum(v) == 2.0);
}

TEST_CASE("summary statistics") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto s = summarize(v);
  CHECK(s.mean == 2.5);
  CHECK(s.variance == doctest::Approx(5.0 / 3.0));
  CHECK(s.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
}

TEST_CASE("KS distance against the brute-force supremum") {
  const std::vector<double> v{-1.2, 0.3, 0.1, 2.2, -0.4};
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  double ref = 0.0;
  const double n = static_cast<double>(v.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double f = oracle::normal_cdf(sorted[k]);
    ref = std::max({ref, std::abs((static_cast<double>(k) + 1.0) / n - f), std::abs(static_cast<double>(k) / n - f)});
  }
  CHECK(ks_distance(v, standard_normal_cdf) == doctest::Approx(ref));
}

TEST_CASE("line fit recovers an exact line") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y{3.0, 5.0, 7.0, 9.0};
  const auto fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.sse == doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("Student t quantile against bisection on the regularized beta cdf") {
  // For 1 degree of freedom the cdf is 1/2 + atan(x)/pi.
  CHECK(student_t_quantile(0.975, 1.0) == doctest::Approx(std::tan(std::numbers::pi * 0.475)));
}

TEST_CASE("Lp norm") {
  const std::vector<double> v{1.0, -2.0, 2.0};
  CHECK(lp_norm(v, 2.0).value == doctest::Approx(std::sqrt(3.0)));
  CHECK(lp_norm(v, 1.0).value == doctest::Approx(5.0 / 3.0));
}
