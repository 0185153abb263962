#pragma once

#include "lagspec/model.hpp"
#include "lagspec/series.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lagspec {

// T observations after a burn-in of burn_in_length(model) innovations, all
// drawn from make_stream(seed). Deterministic in (model, T, seed).
MultivariateSeries simulate(const ProcessModel& model, std::size_t t_len, std::uint64_t seed);
MultivariateSeries simulate(const ProcessModel& model, std::size_t t_len, Rng& rng);

// Coupling estimate of delta_{t,p}^{[i]} = || Z_it - Z_it,{0} ||_p, one entry
// per coordinate, with delta-method standard errors.
struct DeltaEstimate {
  std::vector<double> estimate;
  std::vector<double> se;
};
DeltaEstimate coupled_delta(const ProcessModel& model, std::size_t t, double p, std::size_t reps,
                            std::uint64_t seed, std::size_t workers = 1);

// Least-squares fit of log delta_t = log A + t log rho on the positive terms,
// compared with the power law log delta_t = c - alpha log(t + 1).
struct DecayFit {
  bool exact_zero_tail = false;  // delta_t == 0 from some t <= H on
  bool geometric = false;        // fit usable for tail extrapolation
  double log_a = 0.0;
  double log_rho = 0.0;
  double rho = 0.0;
  double rho_upper = 0.0;  // 95% upper confidence limit
  std::size_t points = 0;
  double sse_geometric = 0.0;
  double sse_power = 0.0;
};

struct CoordinateProfile {
  std::vector<double> delta;  // t = 0..H
  std::vector<double> delta_se;
  DecayFit fit;
  bool remainder_known = false;
  // Tail contributions beyond H (0 for finite memory, NaN when unknown).
  double theta_remainder = 0.0;
  double psi_remainder = 0.0;  // sum of delta_t^{p'} beyond H
  std::vector<double> theta;   // Theta_{m,p}, m = 0..H
  std::vector<double> theta_se;
  std::vector<double> psi;     // Psi_{m,p}
  std::vector<double> d_seq;   // d_{m,p}
};

struct DependenceProfile {
  double p = 2.0;
  double p_prime = 2.0;
  std::size_t horizon = 0;
  std::vector<CoordinateProfile> coords;
  std::vector<std::string> warnings;  // DecayFitWarning entries

  // Maxima over coordinates, as used in the decay conditions.
  std::vector<double> delta_max() const;
  std::vector<double> theta_max() const;
  std::vector<double> psi_max() const;
  std::vector<double> d_max() const;
};

// Fits, extends tails and aggregates a supplied delta sequence per coordinate.
DependenceProfile profile_from_deltas(std::vector<std::vector<double>> delta,
                                      std::vector<std::vector<double>> delta_se, double p);

DependenceProfile profile(const ProcessModel& model, double p, std::size_t horizon,
                          std::size_t reps, std::uint64_t seed, std::size_t workers = 1);

// d_{m,p} = sum_t min(psi, delta_t) including the extrapolated tail.
double d_from(const CoordinateProfile& coord, double psi);

// Z~_t = E(Z_t | e_{t-m}, ..., e_t) on the same innovation stream that
// simulate(model, T, seed) uses. Linear models are truncated exactly;
// nonlinear ones average inner_reps redraws of the older innovations.
MultivariateSeries m_dependent_approx(const ProcessModel& model, std::size_t m, std::size_t t_len,
                                      std::uint64_t seed, std::size_t inner_reps,
                                      std::size_t workers = 1);

enum class Verdict { pass, fail, inconclusive };
std::string_view verdict_name(Verdict v) noexcept;

struct ConditionReport {
  double p = 0.0;
  double effective_p = 0.0;  // 2p in relaxed (independent components) mode
  bool relaxed = false;
  double delta_param = 1.0;

  Verdict geometric = Verdict::inconclusive;
  double fitted_rho = 0.0;
  double rho_upper = 0.0;

  double alpha1_threshold = 0.0;  // for d_{m,p}
  double alpha2_threshold = 0.0;  // for Theta_{m,p}
  double alpha1_fit = 0.0;
  double alpha2_fit = 0.0;
  Verdict alpha1 = Verdict::inconclusive;
  Verdict alpha2 = Verdict::inconclusive;

  double b = 0.0;
  double b_lower = 0.0;
  bool bandwidth_admissible = false;

  bool moments_theorem1 = false;  // p > 4
  bool moments_theorem2 = false;  // p >= 4
  double nu_star_max = 0.0;       // p / 4

  std::vector<std::string> notes;
};

// alpha1 > max[1/2 - (p-4)/(2 delta p), 2 delta / p],
// alpha2 > max[1 - (p-4)/(2 delta p), 0].
double alpha1_threshold(double p, double delta_param);
double alpha2_threshold(double p, double delta_param);

ConditionReport check_conditions(const DependenceProfile& profile, double p, double b, double b_lower,
                                 double delta_param, bool relaxed = false);

}  // namespace lagspec
