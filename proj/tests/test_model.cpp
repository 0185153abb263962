#include "oracles.hpp"

#include "lagspec/dependence.hpp"
#include "lagspec/error.hpp"
#include "lagspec/model.hpp"
#include "lagspec/spectral.hpp"

#include <doctest.h>

using namespace lagspec;

TEST_CASE("AR(1) autocovariance closed form") {
  const auto m = ProcessModel::ar1(0.5, 2.0);
  for (long u = -5; u <= 5; ++u) {
    CHECK(m.autocov(u)(0, 0) == doctest::Approx(2.0 * std::pow(0.5, std::abs(u)) / 0.75));
  }
}

TEST_CASE("VAR(1) autocovariance against the moving-average sum") {
  Eigen::MatrixXd a(2, 2);
  a << 0.4, 0.1, 0.0, 0.3;
  Eigen::MatrixXd s(2, 2);
  s << 1.0, 0.3, 0.3, 2.0;
  const auto m = ProcessModel::var1(a, s);
  for (long u = -4; u <= 4; ++u) {
    CAPTURE(u);
    CHECK((m.autocov(u) - oracle::var1_gamma(a, s, u)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("VMA autocovariance") {
  Eigen::MatrixXd b0(1, 1);
  Eigen::MatrixXd b1(1, 1);
  b0 << 1.0;
  b1 << 0.6;
  const auto m = ProcessModel::vma({b0, b1}, Eigen::MatrixXd::Identity(1, 1));
  CHECK(m.autocov(0)(0, 0) == doctest::Approx(1.36));
  CHECK(m.autocov(1)(0, 0) == doctest::Approx(0.6));
  CHECK(m.autocov(-1)(0, 0) == doctest::Approx(0.6));
  CHECK(m.autocov(2)(0, 0) == 0.0);
  CHECK(m.truncation_horizon() == 1);
}

TEST_CASE("model grammar") {
  CHECK(ProcessModel::parse("white").kind() == ModelKind::white_noise);
  CHECK(ProcessModel::parse("white:n=3,sigma2=2").n_dim() == 3);
  CHECK(ProcessModel::parse("ar1:phi=0.5").autocov(0)(0, 0) == doctest::Approx(4.0 / 3.0));
  CHECK(ProcessModel::parse("var1").n_dim() == 2);
  CHECK(ProcessModel::parse("tar:a=0.5,b=-0.3").kind() == ModelKind::threshold_ar1);
  CHECK_THROWS_AS(ProcessModel::parse("garch:x=1"), Error);
  CHECK_THROWS_AS(ProcessModel::parse("ar1"), Error);
  CHECK_THROWS_AS(ProcessModel::parse("ar1:phi=1.2"), Error);
  CHECK_THROWS_AS(ProcessModel::parse("tar:a=0.7,b=0.6"), Error);
}

TEST_CASE("nonstationary and nonlinear models are rejected where appropriate") {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 0.0, 0.0, 0.2;
  CHECK_THROWS_AS(ProcessModel::var1(a, Eigen::MatrixXd::Identity(2, 2)), Error);
  const auto tar = ProcessModel::threshold_ar1(0.5, -0.3);
  CHECK_THROWS_AS(tar.autocov(0), Error);
  CHECK_THROWS_AS(true_spectrum(tar, {0.5}), Error);
}

TEST_CASE("true spectrum equals the Fourier sum of the autocovariances") {
  const auto m = ProcessModel::default_var1();
  const auto gamma = [&](long u) { return m.autocov(u); };
  for (const double lambda : {0.0, 0.7, 1.9, std::numbers::pi}) {
    const auto f = true_spectrum(m, {lambda}).matrices[0];
    const auto ref = oracle::lag_sum(gamma, [](long) { return 1.0; }, 200, lambda);
    CHECK((f - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
  const auto ar = ProcessModel::ar1(0.5);
  const double f = true_spectrum(ar, {std::numbers::pi / 2}).entry(0, 0, 0).real();
  CHECK(f == doctest::Approx(1.0 / (2.0 * std::numbers::pi * 1.25)));
}

TEST_CASE("simulation reproduces and has the stationary variance") {
  const auto m = ProcessModel::ar1(0.5);
  const auto a = simulate(m, 20000, 9);
  const auto b = simulate(m, 20000, 9);
  CHECK(a.values() == b.values());
  const double var = a.values().col(0).squaredNorm() / 20000.0;
  CHECK(var == doctest::Approx(4.0 / 3.0).epsilon(0.05));
}

TEST_CASE("moving-average weights of a VAR(1)") {
  const auto m = ProcessModel::default_var1();
  const Eigen::MatrixXd a = m.transition();
  CHECK((m.ma_weight(3) - a * a * a).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(burn_in_length(m) >= 1000);
}
