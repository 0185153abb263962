#include "lagspec/dependence.hpp"
#include "lagspec/error.hpp"

#include <doctest.h>

using namespace lagspec;

TEST_CASE("coupled delta of an AR(1) decays like phi^t") {
  const auto m = ProcessModel::ar1(0.5);
  for (std::size_t t : {0u, 1u, 3u}) {
    const auto d = coupled_delta(m, t, 2.0, 4000, 17);
    const double oracle = std::pow(0.5, static_cast<double>(t)) * std::sqrt(2.0);
    CAPTURE(t);
    CHECK(std::abs(d.estimate[0] - oracle) < 4.0 * d.se[0]);
  }
}

TEST_CASE("white noise has no dependence beyond lag zero") {
  const auto d = coupled_delta(ProcessModel::white_noise(2), 2, 2.0, 200, 1);
  CHECK(d.estimate[0] == 0.0);
  CHECK(d.estimate[1] == 0.0);
}

TEST_CASE("coupling is deterministic across worker counts") {
  const auto m = ProcessModel::default_var1();
  const auto a = coupled_delta(m, 2, 4.0, 300, 3, 1);
  const auto b = coupled_delta(m, 2, 4.0, 300, 3, 4);
  CHECK(a.estimate == b.estimate);
  CHECK(a.se == b.se);
}

TEST_CASE("profile aggregates an exact geometric sequence") {
  std::vector<double> delta;
  for (int t = 0; t <= 10; ++t) delta.push_back(std::pow(0.5, t));
  const auto prof = profile_from_deltas({delta}, {std::vector<double>(11, 0.0)}, 2.0);
  const auto& c = prof.coords[0];
  CHECK(c.fit.geometric);
  CHECK(c.fit.rho == doctest::Approx(0.5));
  CHECK(c.remainder_known);
  // Theta_0 = sum_t 0.5^t = 2 once the tail is added back.
  CHECK(c.theta[0] == doctest::Approx(2.0));
  CHECK(c.theta[4] == doctest::Approx(2.0 * std::pow(0.5, 4)));
  // Psi_0 = (sum_t 0.25^t)^{1/2}.
  CHECK(c.psi[0] == doctest::Approx(std::sqrt(4.0 / 3.0)));
  // d_0 = sum_t min(Psi_0, delta_t) = Theta_0 since every delta_t <= Psi_0.
  CHECK(c.d_seq[0] == doctest::Approx(2.0));
}

TEST_CASE("power-law sequences are flagged and leave the remainder unknown") {
  std::vector<double> delta;
  for (int t = 0; t <= 12; ++t) delta.push_back(1.0 / std::pow(t + 1.0, 1.5));
  const auto prof = profile_from_deltas({delta}, {std::vector<double>(13, 0.0)}, 4.0);
  CHECK_FALSE(prof.coords[0].fit.geometric);
  CHECK_FALSE(prof.coords[0].remainder_known);
  REQUIRE(prof.warnings.size() == 1);
  CHECK(prof.warnings[0].rfind("DecayFitWarning", 0) == 0);
  const auto rep = check_conditions(prof, 4.0, 0.4, 0.3, 1.0);
  CHECK(rep.geometric == Verdict::fail);
  CHECK(rep.alpha1 == Verdict::inconclusive);
}

TEST_CASE("decay thresholds") {
  CHECK(alpha1_threshold(8.0, 1.0) == doctest::Approx(std::max(0.5 - 4.0 / 16.0, 2.0 / 8.0)));
  CHECK(alpha2_threshold(8.0, 1.0) == doctest::Approx(0.75));
  CHECK(alpha2_threshold(100.0, 0.1) == 0.0);
}

TEST_CASE("condition report for a finite-memory sequence") {
  std::vector<double> delta{1.0, 0.5, 0.0, 0.0, 0.0, 0.0};
  const auto prof = profile_from_deltas({delta}, {std::vector<double>(6, 0.0)}, 8.0);
  const auto rep = check_conditions(prof, 8.0, 0.4, 0.3, 1.0, true);
  CHECK(rep.geometric == Verdict::pass);
  CHECK(rep.alpha2 == Verdict::pass);
  CHECK(rep.effective_p == 16.0);
  CHECK(rep.bandwidth_admissible);
  CHECK(rep.moments_theorem1);
  CHECK(rep.nu_star_max == 4.0);
}

TEST_CASE("m-dependent approximation of a linear model") {
  const auto m = ProcessModel::ar1(0.5);
  const auto z = simulate(m, 300, 21);
  const auto approx = m_dependent_approx(m, 60, 300, 21, 0);
  CHECK((z.values() - approx.values()).cwiseAbs().maxCoeff() < 1e-13);
  const auto short_memory = m_dependent_approx(m, 2, 300, 21, 0);
  // E(Z - Z~)^2 = sum_{j > 2} 0.25^j = 0.25^3 / 0.75.
  const double mse = (z.values() - short_memory.values()).squaredNorm() / 300.0;
  CHECK(mse == doctest::Approx(std::pow(0.25, 3) / 0.75).epsilon(0.3));
}

TEST_CASE("m-dependent approximation of a nonlinear model") {
  const auto m = ProcessModel::threshold_ar1(0.5, -0.2);
  CHECK_THROWS_AS(m_dependent_approx(m, 3, 50, 1, 10), Error);
  const auto z = simulate(m, 60, 4);
  const auto approx = m_dependent_approx(m, 40, 60, 4, 50);
  CHECK((z.values() - approx.values()).cwiseAbs().maxCoeff() < 1e-6);
}
