#include "oracles.hpp"

#include "lagspec/error.hpp"
#include "lagspec/kernels.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using lagspec::Kernel;

namespace {

double kappa_by_quadrature(const Kernel& k) {
  return oracle::simpson([&](double x) { return k(x) * k(x); }, -1.0, 1.0, 200000);
}

}  // namespace

TEST_CASE("kernel values at reference points") {
  const auto b = Kernel::bartlett();
  CHECK(b(0.0) == 1.0);
  CHECK(b(0.25) == doctest::Approx(0.75));
  CHECK(b(-0.5) == doctest::Approx(0.5));
  CHECK(b(1.5) == 0.0);

  const auto p = Kernel::parzen();
  CHECK(p(0.25) == doctest::Approx(1.0 - 6.0 * 0.0625 + 6.0 * 0.015625));
  CHECK(p(0.75) == doctest::Approx(2.0 * 0.25 * 0.25 * 0.25));
  // The two Parzen pieces meet at 1/2.
  CHECK(p(0.5 - 1e-12) == doctest::Approx(p(0.5 + 1e-12)).epsilon(1e-9));

  const auto t = Kernel::tukey_hanning();
  CHECK(t(0.5) == doctest::Approx(0.5));
  CHECK(t(1.0) == doctest::Approx(0.0).epsilon(1e-15));

  const auto tr = Kernel::truncated();
  CHECK(tr(0.999) == 1.0);
  CHECK(tr(1.001) == 0.0);
}

TEST_CASE("kappa matches numerical integration of K^2") {
  for (const auto& k : {Kernel::bartlett(), Kernel::parzen(), Kernel::tukey_hanning(), Kernel::truncated()}) {
    CAPTURE(k.name());
    CHECK(k.kappa() == doctest::Approx(kappa_by_quadrature(k)).epsilon(1e-6));
  }
  CHECK(Kernel::parzen().kappa() == doctest::Approx(151.0 / 280.0));
}

TEST_CASE("bias order constants follow from 1 - K(x) near the origin") {
  const double x = 1e-4;
  const auto p = Kernel::parzen();
  CHECK(p.bias_order().q == 2.0);
  CHECK((1.0 - p(x)) / (x * x) == doctest::Approx(*p.bias_order().k_q).epsilon(1e-3));

  const auto t = Kernel::tukey_hanning();
  CHECK((1.0 - t(x)) / (x * x) == doctest::Approx(*t.bias_order().k_q).epsilon(1e-6));

  const auto b = Kernel::bartlett();
  REQUIRE(b.bias_order().expansion_q.has_value());
  CHECK(*b.bias_order().expansion_q == 1.0);
  CHECK((1.0 - b(x)) / x == doctest::Approx(*b.bias_order().expansion_k_q));
  CHECK(b.bias_order().q == 2.0);

  CHECK(std::isinf(Kernel::truncated().bias_order().q));
}

TEST_CASE("positive semidefinite guarantee and warnings") {
  CHECK(Kernel::bartlett().psd_guarantee());
  CHECK(Kernel::parzen().psd_guarantee());
  CHECK_FALSE(Kernel::tukey_hanning().psd_guarantee());
  CHECK_FALSE(Kernel::truncated().psd_guarantee());
  CHECK(Kernel::bartlett().warnings().empty());
  CHECK_FALSE(Kernel::truncated().warnings().empty());
}

TEST_CASE("tabulated kernel reproduces Bartlett") {
  const auto k = Kernel::tabulated({-1.0, -0.5, 0.0, 0.5, 1.0}, {0.0, 0.5, 1.0, 0.5, 0.0});
  for (double u = -1.0; u <= 1.0; u += 0.0625) CHECK(k(u) == doctest::Approx(Kernel::bartlett()(u)));
  CHECK(k.kappa() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(k(0.3) == k(-0.3));
  CHECK(std::isnan(k.bias_order().q));
}

TEST_CASE("tabulated kappa is exact for piecewise-linear tables") {
  const auto k = Kernel::tabulated({-0.8, -0.3, 0.0, 0.3, 0.8}, {0.1, 0.7, 1.0, 0.7, 0.1});
  CHECK(k.kappa() == doctest::Approx(kappa_by_quadrature(k)).epsilon(1e-6));
  CHECK(k(0.9) == 0.0);
}

TEST_CASE("tabulated kernel validation") {
  using lagspec::Error;
  CHECK_THROWS_AS(Kernel::tabulated({-1.0, 0.0, 1.0}, {0.0, 0.9, 0.0}), Error);   // K(0) != 1
  CHECK_THROWS_AS(Kernel::tabulated({-1.0, 0.0, 0.5}, {0.0, 1.0, 0.0}), Error);   // asymmetric
  CHECK_THROWS_AS(Kernel::tabulated({-2.0, 0.0, 2.0}, {0.0, 1.0, 0.0}), Error);   // outside [-1, 1]
  CHECK_THROWS_AS(Kernel::tabulated({-1.0, 0.5, 1.0}, {0.0, 1.0, 0.0}), Error);   // no zero
}

TEST_CASE("kernel lookup by name and from a file") {
  CHECK(Kernel::from_name("tukey").kind() == lagspec::KernelKind::tukey_hanning);
  CHECK(Kernel::from_name("parzen").kind() == lagspec::KernelKind::parzen);
  CHECK_THROWS_AS(Kernel::from_name("gaussian"), lagspec::Error);

  const auto path = std::filesystem::temp_directory_path() / "lagspec_kernel_table.csv";
  {
    std::ofstream f(path);
    f << "u,k\n-1,0\n-0.5,0.5\n0,1\n0.5,0.5\n1,0\n";
  }
  const auto k = Kernel::from_name("file:" + path.string());
  CHECK(k.kind() == lagspec::KernelKind::tabulated);
  CHECK(k(0.25) == doctest::Approx(0.75));
  std::filesystem::remove(path);
}
