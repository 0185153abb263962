#include "lagspec/dependence.hpp"

#include "lagspec/error.hpp"
#include "lagspec/parallel.hpp"
#include "lagspec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lagspec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Stream tags keep the coupling and conditional-expectation draws apart from
// the plain simulation stream.
constexpr std::uint64_t kCouplingTag = 0xC0u;
constexpr std::uint64_t kInnerTag = 0x1Eu;

Verdict worst(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::pass;
}

DecayFit fit_decay(const std::vector<double>& delta) {
  DecayFit fit;
  const std::size_t h = delta.size() - 1;
  if (delta.back() == 0.0) {
    fit.exact_zero_tail = true;
    fit.geometric = true;
    return fit;
  }
  std::vector<double> t;
  std::vector<double> logt;
  std::vector<double> logd;
  for (std::size_t k = 0; k <= h; ++k) {
    if (delta[k] > 0.0) {
      t.push_back(static_cast<double>(k));
      logt.push_back(std::log(static_cast<double>(k) + 1.0));
      logd.push_back(std::log(delta[k]));
    }
  }
  fit.points = t.size();
  if (t.size() < 3) return fit;
  const auto geo = fit_line(t, logd);
  const auto pow = fit_line(logt, logd);
  fit.log_a = geo.intercept;
  fit.log_rho = geo.slope;
  fit.rho = std::exp(geo.slope);
  const double upper = geo.slope + student_t_quantile(0.975, static_cast<double>(t.size() - 2)) * geo.slope_se;
  fit.rho_upper = std::exp(upper);
  fit.sse_geometric = geo.sse;
  fit.sse_power = pow.sse;
  fit.geometric = upper < 0.0 && geo.sse <= pow.sse;
  return fit;
}

// Number of leading tail terms (t > H) equal to psi before A rho^t drops below it.
double d_tail(const DecayFit& fit, std::size_t h, double psi) {
  if (fit.exact_zero_tail) return 0.0;
  const double log_psi = std::log(psi);
  const double first = static_cast<double>(h + 1);
  double crossing = first;
  if (psi <= 0.0) return 0.0;
  if (fit.log_a + fit.log_rho * first > log_psi) {
    crossing = std::ceil((log_psi - fit.log_a) / fit.log_rho);
    crossing = std::max(crossing, first);
    // guard against rounding at the crossing point
    while (fit.log_a + fit.log_rho * crossing > log_psi) crossing += 1.0;
  }
  const double flat = (crossing - first) * psi;
  const double geometric = std::exp(fit.log_a + fit.log_rho * crossing) / (1.0 - fit.rho);
  return flat + geometric;
}

std::vector<double> column_max(const std::vector<CoordinateProfile>& coords,
                               std::vector<double> CoordinateProfile::*member) {
  std::vector<double> out((coords.front().*member).size(), 0.0);
  for (const auto& c : coords) {
    const auto& v = c.*member;
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = std::max(out[k], v[k]);
  }
  return out;
}

// Negative slope of log y against log m over m >= 1 with y > 0.
std::optional<double> power_exponent(const std::vector<double>& y) {
  std::vector<double> x;
  std::vector<double> ly;
  for (std::size_t m = 1; m < y.size(); ++m) {
    if (y[m] > 0.0) {
      x.push_back(std::log(static_cast<double>(m)));
      ly.push_back(std::log(y[m]));
    }
  }
  if (x.size() < 2) return std::nullopt;
  return -fit_line(x, ly).slope;
}

}  // namespace

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

MultivariateSeries simulate(const ProcessModel& model, std::size_t t_len, Rng& rng) {
  if (t_len < 2) throw Error(ErrorCode::InsufficientData, "simulation needs T >= 2");
  const std::size_t burn = burn_in_length(model);
  const Eigen::MatrixXd path = model.run(model.draw_innovations(burn + t_len, rng));
  return MultivariateSeries(path.bottomRows(static_cast<Eigen::Index>(t_len)), false);
}

MultivariateSeries simulate(const ProcessModel& model, std::size_t t_len, std::uint64_t seed) {
  Rng rng = make_stream(seed);
  return simulate(model, t_len, rng);
}

DeltaEstimate coupled_delta(const ProcessModel& model, std::size_t t, double p, std::size_t reps,
                            std::uint64_t seed, std::size_t workers) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "coupling needs p >= 1");
  if (reps < 100) throw Error(ErrorCode::InvalidArgument, "coupling needs at least 100 replications");
  const std::size_t horizon = model.truncation_horizon();
  const auto n = static_cast<Eigen::Index>(model.n_dim());
  const auto len = static_cast<Eigen::Index>(horizon + t + 1);
  const auto zero_row = static_cast<Eigen::Index>(horizon);

  Eigen::MatrixXd diffs(static_cast<Eigen::Index>(reps), n);
  parallel_for(reps, workers, [&](std::size_t r) {
    Rng rng = make_stream(seed, {kCouplingTag, r});
    // Draw order fixes e_0*, e_0, e_{-1..-L}, then e_{1..t}, so a replication
    // shares its early innovations across every t.
    const Eigen::MatrixXd star = model.draw_innovations(1, rng);
    const Eigen::MatrixXd past = model.draw_innovations(horizon + 1, rng);
    const Eigen::MatrixXd future = model.draw_innovations(t, rng);
    Eigen::MatrixXd eps(len, past.cols());
    for (Eigen::Index k = 0; k <= zero_row; ++k) eps.row(zero_row - k) = past.row(k);
    if (t > 0) eps.bottomRows(static_cast<Eigen::Index>(t)) = future;
    Eigen::MatrixXd coupled = eps;
    coupled.row(zero_row) = star.row(0);
    const Eigen::MatrixXd a = model.run(eps);
    const Eigen::MatrixXd b = model.run(coupled);
    diffs.row(static_cast<Eigen::Index>(r)) = a.row(len - 1) - b.row(len - 1);
  });

  DeltaEstimate out;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<double> col(diffs.col(i).data(), diffs.col(i).data() + diffs.rows());
    const auto norm = lp_norm(col, p);
    out.estimate.push_back(norm.value);
    out.se.push_back(norm.se);
  }
  return out;
}

std::vector<double> DependenceProfile::delta_max() const { return column_max(coords, &CoordinateProfile::delta); }
std::vector<double> DependenceProfile::theta_max() const { return column_max(coords, &CoordinateProfile::theta); }
std::vector<double> DependenceProfile::psi_max() const { return column_max(coords, &CoordinateProfile::psi); }
std::vector<double> DependenceProfile::d_max() const { return column_max(coords, &CoordinateProfile::d_seq); }

double d_from(const CoordinateProfile& coord, double psi) {
  double total = 0.0;
  for (const double d : coord.delta) total += std::min(psi, d);
  if (coord.remainder_known) total += d_tail(coord.fit, coord.delta.size() - 1, psi);
  return total;
}

DependenceProfile profile_from_deltas(std::vector<std::vector<double>> delta,
                                      std::vector<std::vector<double>> delta_se, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "profile needs p >= 1");
  if (delta.empty() || delta.size() != delta_se.size()) {
    throw Error(ErrorCode::InvalidArgument, "profile needs matching delta and se sequences");
  }
  DependenceProfile prof;
  prof.p = p;
  prof.p_prime = std::min(2.0, p);
  prof.horizon = delta.front().size() - 1;
  if (delta.front().size() < 5) throw Error(ErrorCode::InvalidArgument, "profile horizon must be >= 4");
  const double pp = prof.p_prime;

  for (std::size_t i = 0; i < delta.size(); ++i) {
    CoordinateProfile c;
    c.delta = std::move(delta[i]);
    c.delta_se = std::move(delta_se[i]);
    const std::size_t h = c.delta.size() - 1;
    if (h != prof.horizon || c.delta_se.size() != c.delta.size()) {
      throw Error(ErrorCode::InvalidArgument, "all coordinates need the same horizon");
    }
    for (const double d : c.delta) {
      if (!(d >= 0.0) || !std::isfinite(d)) throw Error(ErrorCode::InvalidArgument, "delta must be finite and >= 0");
    }
    c.fit = fit_decay(c.delta);
    double theta_tail_se = 0.0;
    if (c.fit.exact_zero_tail) {
      c.remainder_known = true;
    } else if (c.fit.geometric) {
      c.remainder_known = true;
      const double first = static_cast<double>(h + 1);
      c.theta_remainder = std::exp(c.fit.log_a + c.fit.log_rho * first) / (1.0 - c.fit.rho);
      c.psi_remainder = std::exp(pp * (c.fit.log_a + c.fit.log_rho * first)) / (1.0 - std::pow(c.fit.rho, pp));
      if (c.delta[h] > 0.0) theta_tail_se = c.theta_remainder * c.delta_se[h] / c.delta[h];
    } else {
      c.remainder_known = false;
      c.theta_remainder = kNaN;
      c.psi_remainder = kNaN;
      std::ostringstream msg;
      msg << "DecayFitWarning: coordinate " << i
          << " shows no geometric decay; tails truncated at H = " << h << ", remainder unknown";
      prof.warnings.push_back(msg.str());
    }

    const double theta_tail = c.remainder_known ? c.theta_remainder : 0.0;
    const double psi_tail = c.remainder_known ? c.psi_remainder : 0.0;
    c.theta.assign(h + 1, 0.0);
    c.theta_se.assign(h + 1, 0.0);
    c.psi.assign(h + 1, 0.0);
    double run = 0.0;
    double run_se = 0.0;
    double run_pow = 0.0;
    for (std::size_t m = h + 1; m-- > 0;) {
      run += c.delta[m];
      run_se += c.delta_se[m];
      run_pow += std::pow(c.delta[m], pp);
      c.theta[m] = run + theta_tail;
      c.theta_se[m] = run_se + theta_tail_se;
      c.psi[m] = std::pow(run_pow + psi_tail, 1.0 / pp);
    }
    c.d_seq.resize(h + 1);
    for (std::size_t m = 0; m <= h; ++m) c.d_seq[m] = d_from(c, c.psi[m]);
    prof.coords.push_back(std::move(c));
  }
  return prof;
}

DependenceProfile profile(const ProcessModel& model, double p, std::size_t horizon, std::size_t reps,
                          std::uint64_t seed, std::size_t workers) {
  if (horizon < 4) throw Error(ErrorCode::InvalidArgument, "profile horizon must be >= 4");
  const std::size_t n = model.n_dim();
  std::vector<std::vector<double>> delta(n, std::vector<double>(horizon + 1));
  std::vector<std::vector<double>> se(n, std::vector<double>(horizon + 1));
  for (std::size_t t = 0; t <= horizon; ++t) {
    const auto est = coupled_delta(model, t, p, reps, seed, workers);
    for (std::size_t i = 0; i < n; ++i) {
      delta[i][t] = est.estimate[i];
      se[i][t] = est.se[i];
    }
  }
  return profile_from_deltas(std::move(delta), std::move(se), p);
}

MultivariateSeries m_dependent_approx(const ProcessModel& model, std::size_t m, std::size_t t_len,
                                      std::uint64_t seed, std::size_t inner_reps, std::size_t workers) {
  if (t_len < 2) throw Error(ErrorCode::InsufficientData, "approximation needs T >= 2");
  const std::size_t burn = burn_in_length(model);
  if (m > burn) {
    throw Error(ErrorCode::LagOutOfRange, "m = " + std::to_string(m) + " exceeds the burn-in of " +
                                              std::to_string(burn) + " innovations");
  }
  if (!model.is_linear() && inner_reps < 50) {
    throw Error(ErrorCode::InsufficientInnerReps,
                "nonlinear models need at least 50 inner replications, got " + std::to_string(inner_reps));
  }
  Rng rng = make_stream(seed);
  const Eigen::MatrixXd eps = model.draw_innovations(burn + t_len, rng);
  const auto n = static_cast<Eigen::Index>(model.n_dim());
  Eigen::MatrixXd out(static_cast<Eigen::Index>(t_len), n);

  if (model.is_linear()) {
    std::vector<Eigen::MatrixXd> weights;
    for (std::size_t j = 0; j <= m; ++j) weights.push_back(model.ma_weight(j));
    for (std::size_t t = 0; t < t_len; ++t) {
      const auto idx = static_cast<Eigen::Index>(burn + t);
      Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
      for (std::size_t j = 0; j <= m; ++j) {
        z += weights[j] * eps.row(idx - static_cast<Eigen::Index>(j)).transpose();
      }
      out.row(static_cast<Eigen::Index>(t)) = z.transpose();
    }
    return MultivariateSeries(std::move(out), false);
  }

  // Scalar nonlinear recursion: average over redrawn innovations older than t - m.
  const std::size_t history = std::max<std::size_t>(model.truncation_horizon(), 1);
  parallel_for(t_len, workers, [&](std::size_t t) {
    const auto idx = static_cast<Eigen::Index>(burn + t);
    std::vector<double> values(inner_reps);
    for (std::size_t k = 0; k < inner_reps; ++k) {
      Rng inner = make_stream(seed, {kInnerTag, t, k});
      const Eigen::MatrixXd old = model.draw_innovations(history, inner);
      double state = 0.0;
      for (Eigen::Index s = 0; s < old.rows(); ++s) state = model.scalar_step(state, old(s, 0));
      for (Eigen::Index s = idx - static_cast<Eigen::Index>(m); s <= idx; ++s) {
        state = model.scalar_step(state, eps(s, 0));
      }
      values[k] = state;
    }
    out(static_cast<Eigen::Index>(t), 0) = compensated_sum(values) / static_cast<double>(inner_reps);
  });
  return MultivariateSeries(std::move(out), false);
}

double alpha1_threshold(double p, double delta_param) {
  return std::max(0.5 - (p - 4.0) / (2.0 * delta_param * p), 2.0 * delta_param / p);
}

double alpha2_threshold(double p, double delta_param) {
  return std::max(1.0 - (p - 4.0) / (2.0 * delta_param * p), 0.0);
}

ConditionReport check_conditions(const DependenceProfile& prof, double p, double b, double b_lower,
                                 double delta_param, bool relaxed) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  if (!(delta_param > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta parameter must be positive");
  ConditionReport rep;
  rep.p = p;
  rep.relaxed = relaxed;
  rep.effective_p = relaxed ? 2.0 * p : p;
  rep.delta_param = delta_param;

  // (a) geometric decay, worst coordinate decides.
  rep.geometric = Verdict::pass;
  for (const auto& c : prof.coords) {
    Verdict v = Verdict::pass;
    if (c.fit.exact_zero_tail) {
      v = Verdict::pass;
    } else if (c.fit.points < 3) {
      v = Verdict::inconclusive;
    } else {
      v = c.fit.geometric ? Verdict::pass : Verdict::fail;
      rep.fitted_rho = std::max(rep.fitted_rho, c.fit.rho);
      rep.rho_upper = std::max(rep.rho_upper, c.fit.rho_upper);
    }
    rep.geometric = worst(rep.geometric, v);
  }

  // (b) power-law exponents of the aggregate sequences.
  const double pe = rep.effective_p;
  rep.alpha1_threshold = alpha1_threshold(pe, delta_param);
  rep.alpha2_threshold = alpha2_threshold(pe, delta_param);
  const bool tails_known = std::all_of(prof.coords.begin(), prof.coords.end(),
                                       [](const CoordinateProfile& c) { return c.remainder_known; });
  const auto judge = [&](const std::vector<double>& seq, double threshold, double& fitted) {
    // Finite memory: the sequence reaches zero inside the horizon.
    if (seq.back() == 0.0 && tails_known) {
      fitted = std::numeric_limits<double>::infinity();
      return Verdict::pass;
    }
    const auto alpha = power_exponent(seq);
    fitted = alpha.value_or(kNaN);
    if (!alpha || !tails_known) return Verdict::inconclusive;
    return *alpha > threshold ? Verdict::pass : Verdict::fail;
  };
  rep.alpha1 = judge(prof.d_max(), rep.alpha1_threshold, rep.alpha1_fit);
  rep.alpha2 = judge(prof.theta_max(), rep.alpha2_threshold, rep.alpha2_fit);
  if (!tails_known) rep.notes.push_back("tail remainders unknown; power-law verdicts are inconclusive");

  // (c) bandwidth window 0 < b_lower <= b < 1; equality is allowed with c_1 < c_2.
  rep.b = b;
  rep.b_lower = b_lower;
  rep.bandwidth_admissible = b_lower > 0.0 && b_lower <= b && b < 1.0;

  rep.moments_theorem1 = pe > 4.0;
  rep.moments_theorem2 = pe >= 4.0;
  rep.nu_star_max = pe / 4.0;
  if (std::abs(prof.p - p) > 1e-12) {
    rep.notes.push_back("profile was computed with a different p than the one checked");
  }
  if (relaxed) rep.notes.push_back("relaxed mode: independent components, moment order doubled");
  return rep;
}

}  // namespace lagspec
