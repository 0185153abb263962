#include "oracles.hpp"

#include "lagspec/acov.hpp"
#include "lagspec/error.hpp"
#include "lagspec/model.hpp"
#include "lagspec/rng.hpp"

#include <doctest.h>

#include <random>

using namespace lagspec;

TEST_CASE("sample autocovariance matches the double loop") {
  Rng rng = make_stream(5, {1});
  std::normal_distribution<double> nd;
  for (const int n : {1, 3}) {
    Eigen::MatrixXd z(37, n);
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
      for (Eigen::Index c = 0; c < n; ++c) z(r, c) = nd(rng);
    }
    const auto acov = sample_autocov(MultivariateSeries(z), 36);
    for (long u = -36; u <= 36; ++u) {
      const Eigen::MatrixXd ref = oracle::acov(z, u);
      CHECK((acov.at(u) - ref).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("negative lags are exact transposes") {
  Rng rng = make_stream(6, {1});
  std::normal_distribution<double> nd;
  Eigen::MatrixXd z(64, 2);
  for (Eigen::Index r = 0; r < z.rows(); ++r) z.row(r) << nd(rng), nd(rng);
  const auto acov = sample_autocov(MultivariateSeries(z), 10);
  for (long u = 0; u <= 10; ++u) CHECK(acov.at(-u) == Eigen::MatrixXd(acov.at(u).transpose()));
}

TEST_CASE("lag range is enforced") {
  const MultivariateSeries s(Eigen::MatrixXd::Ones(5, 1));
  CHECK_THROWS_AS(sample_autocov(s, 5), Error);
  const auto acov = sample_autocov(s, 2);
  CHECK_THROWS_AS(acov.at(3), Error);
  CHECK(acov.at(2)(0, 0) == doctest::Approx(3.0 / 5.0));
}

TEST_CASE("expected autocovariance carries the divisor-T factor") {
  const auto model = ProcessModel::ar1(0.5);
  const double g3 = std::pow(0.5, 3) / (1.0 - 0.25);
  CHECK(expected_autocov(model, 3, 10)(0, 0) == doctest::Approx(0.7 * g3));
  CHECK(expected_autocov(model, -3, 10)(0, 0) == doctest::Approx(0.7 * g3));
}

TEST_CASE("white-noise autocovariance mean over replications") {
  // E C(0) = sigma^2 and E C(u) = 0 for u != 0, without centering.
  const std::size_t t_len = 64;
  const int reps = 10000;
  Rng rng = make_stream(7, {2});
  std::normal_distribution<double> nd;
  std::vector<double> c0(reps);
  std::vector<double> c1(reps);
  for (int r = 0; r < reps; ++r) {
    Eigen::MatrixXd z(t_len, 1);
    for (std::size_t t = 0; t < t_len; ++t) z(static_cast<Eigen::Index>(t), 0) = 2.0 * nd(rng);
    const auto acov = sample_autocov(MultivariateSeries(z), 1);
    c0[r] = acov.at(0)(0, 0);
    c1[r] = acov.at(1)(0, 0);
  }
  const auto mean_se = [](const std::vector<double>& v) {
    double m = 0.0;
    for (const double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (const double x : v) s += (x - m) * (x - m);
    return std::pair{m, std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))};
  };
  const auto model = ProcessModel::white_noise(1, 4.0);
  const auto [m0, se0] = mean_se(c0);
  const auto [m1, se1] = mean_se(c1);
  CHECK(std::abs(m0 - expected_autocov(model, 0, t_len)(0, 0)) < 4.0 * se0);
  CHECK(std::abs(m1 - expected_autocov(model, 1, t_len)(0, 0)) < 4.0 * se1);
}
