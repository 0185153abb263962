#include "oracles.hpp"

#include "lagspec/acov.hpp"
#include "lagspec/dependence.hpp"
#include "lagspec/error.hpp"
#include "lagspec/inference.hpp"

#include <doctest.h>

using namespace lagspec;

namespace {

// Density of the law with cdf exp(-exp(-x/2)).
double gumbel_density(double x) { return 0.5 * std::exp(-x / 2.0) * std::exp(-std::exp(-x / 2.0)); }

SpectralGrid white_estimate(std::size_t t_len, std::size_t n, std::uint64_t seed) {
  const auto series = simulate(ProcessModel::white_noise(n), t_len, seed);
  const auto bw = Bandwidth::from_rule(t_len);
  return estimate_spectrum(sample_autocov(series, bw.value), Kernel::bartlett(), bw, theorem_grid(bw));
}

}  // namespace

TEST_CASE("Gumbel cdf and quantile are inverse") {
  for (const double p : {0.01, 0.5, 0.95, 0.999}) CHECK(gumbel_cdf(gumbel_quantile(p)) == doctest::Approx(p));
  CHECK(gumbel_quantile(0.5) == doctest::Approx(-2.0 * std::log(std::log(2.0))));
  CHECK(gumbel_quantile(0.5) == doctest::Approx(0.7330).epsilon(1e-4));
  CHECK_THROWS_AS(gumbel_quantile(1.0), Error);
  CHECK_THROWS_AS(gumbel_quantile(0.0), Error);
}

TEST_CASE("Gumbel mean and absolute moments against direct quadrature") {
  const double mean = oracle::simpson([](double x) { return x * gumbel_density(x); }, -12.0, 120.0, 400000);
  CHECK(gumbel_mean() == doctest::Approx(mean).epsilon(1e-8));
  CHECK(gumbel_mean() == doctest::Approx(1.1544313298));
  for (const double nu : {1.0, 2.0, 3.0}) {
    const double m = oracle::simpson([nu](double x) { return std::pow(std::abs(x), nu) * gumbel_density(x); },
                                     -12.0, 160.0, 400000);
    CHECK(gumbel_abs_moment(nu) == doctest::Approx(std::pow(m, 1.0 / nu)).epsilon(1e-7));
  }
  // Second moment: variance 4 pi^2 / 6 plus the squared mean.
  const double second = 4.0 * std::numbers::pi * std::numbers::pi / 6.0 + gumbel_mean() * gumbel_mean();
  CHECK(gumbel_abs_moment(2.0) == doctest::Approx(std::sqrt(second)));
}

TEST_CASE("centering constant") {
  const double b = 84.0;
  CHECK(gumbel_centering(84) == doctest::Approx(2.0 * std::log(b) - std::log(std::numbers::pi * std::log(b))));
}

TEST_CASE("normal quantile against bisection") {
  for (const double p : {0.6, 0.975, 0.99}) {
    const double ref = oracle::bisect([p](double x) { return oracle::normal_cdf(x) - p; }, -10.0, 10.0);
    CHECK(normal_quantile(p) == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("omega is 2 at multiples of pi") {
  CHECK(omega(0.0) == 2.0);
  CHECK(omega(std::numbers::pi) == 2.0);
  CHECK(omega(1.0) == 1.0);
}

TEST_CASE("max deviation statistic by hand") {
  const auto est = white_estimate(400, 1, 3);
  const auto bw = Bandwidth::fixed(est.bandwidth);
  const auto model = ProcessModel::white_noise(1);
  const auto center = expected_spectrum(model, Kernel::bartlett(), bw, 400, est.freqs);
  const auto denom = true_spectrum(model, est.freqs);
  const auto stat = max_deviation(est, center, denom, Kernel::bartlett(), {0, 0});
  double worst = 0.0;
  const double f = 1.0 / (2.0 * std::numbers::pi);
  for (std::size_t l = 0; l < est.size(); ++l) {
    const double d = est.entry(l, 0, 0).real() - center.entry(l, 0, 0).real();
    worst = std::max(worst, 400.0 / static_cast<double>(est.bandwidth) * d * d / (2.0 / 3.0 * f * f));
  }
  CHECK(stat.raw_max == doctest::Approx(worst));
  CHECK(stat.centered == doctest::Approx(worst - gumbel_centering(est.bandwidth)));
  CHECK(stat.grid_size == est.bandwidth + 1);

  auto off = est;
  off.freqs = uniform_grid(est.size());
  off.freqs[1] += 0.01;
  CHECK_THROWS_AS(max_deviation(off, center, denom, Kernel::bartlett(), {0, 0}), Error);
}

TEST_CASE("uniform band half-width and Bonferroni split") {
  const auto est = white_estimate(1024, 2, 5);
  const std::vector<EntryIndex> entries{{0, 0}, {0, 1}, {1, 1}};
  const auto band = uniform_band(est, Kernel::bartlett(), 0.95, entries, true);
  CHECK(band.bonferroni_m == 3);
  CHECK(band.adjusted_level == doctest::Approx(1.0 - 0.05 / 3.0));
  CHECK(band.critical_value == doctest::Approx(-2.0 * std::log(-std::log(1.0 - 0.05 / 3.0))));
  const double thr = band.critical_value + gumbel_centering(est.bandwidth);
  const std::size_t l = 3;
  const double hw = std::sqrt(static_cast<double>(est.bandwidth) / 1024.0 * (2.0 / 3.0) *
                              est.entry(l, 0, 0).real() * est.entry(l, 1, 1).real() * thr);
  CHECK(band.entries[1].half_width[l] == doctest::Approx(hw));
  const auto single = uniform_band(est, Kernel::bartlett(), 0.95, entries, false);
  CHECK(single.bonferroni_m == 1);
  CHECK(single.entries[0].half_width[l] < band.entries[0].half_width[l]);
  CHECK_THROWS_AS(uniform_band(est, Kernel::bartlett(), 1.5, entries, true), Error);
}

TEST_CASE("pointwise interval uses omega") {
  const auto est = white_estimate(1024, 1, 6);
  const double z = normal_quantile(0.975);
  const auto ci0 = pointwise_ci(est, Kernel::bartlett(), 0.95, {0, 0}, 0.0);
  const double v0 = static_cast<double>(est.bandwidth) / 1024.0 * 2.0 * (2.0 / 3.0) *
                    std::pow(est.entry(0, 0, 0).real(), 2);
  CHECK(ci0.half_width == doctest::Approx(z * std::sqrt(v0)));
  CHECK_THROWS_AS(pointwise_ci(est, Kernel::bartlett(), 0.95, {0, 0}, 0.123), Error);
}

TEST_CASE("degenerate plug-in spectrum is reported") {
  auto est = white_estimate(256, 1, 7);
  est.matrices[2](0, 0) = 0.0;
  try {
    uniform_band(est, Kernel::bartlett(), 0.9, {{0, 0}}, false);
    FAIL("expected DegenerateSpectrum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSpectrum);
  }
}

TEST_CASE("undersmoothing check") {
  CHECK(check_undersmoothing(0.4, 2.0).satisfied);
  CHECK_FALSE(check_undersmoothing(0.4, 1.0).satisfied);
  CHECK(check_undersmoothing(0.1, std::numeric_limits<double>::infinity()).satisfied);
}
