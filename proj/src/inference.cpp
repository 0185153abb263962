#include "lagspec/inference.hpp"

#include "lagspec/error.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lagspec {

namespace {

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    std::ostringstream msg;
    msg << "level " << level << " must lie strictly between 0 and 1";
    throw Error(ErrorCode::InvalidLevel, msg.str());
  }
}

void check_entry(const SpectralGrid& grid, EntryIndex e) {
  if (e.i >= grid.n_dim() || e.j >= grid.n_dim()) {
    throw Error(ErrorCode::InvalidArgument, "entry (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                                ") outside a " + std::to_string(grid.n_dim()) + "-dim spectrum");
  }
}

void check_theorem_grid(const SpectralGrid& grid) {
  if (grid.bandwidth < 2 || grid.t_len == 0) {
    throw Error(ErrorCode::InvalidArgument, "estimate lacks bandwidth or sample size metadata");
  }
  const auto expected = theorem_grid(Bandwidth::fixed(grid.bandwidth));
  bool same = expected.size() == grid.freqs.size();
  for (std::size_t l = 0; same && l < expected.size(); ++l) {
    same = std::abs(expected[l] - grid.freqs[l]) <= 1e-12;
  }
  if (!same) throw Error(ErrorCode::InvalidArgument, "grid is not the theorem grid pi l / B_T");
}

double positive_diag(const SpectralGrid& grid, std::size_t l, std::size_t i) {
  const double d = grid.entry(l, i, i).real();
  if (!(d > 0.0)) {
    std::ostringstream msg;
    msg << "diagonal entry " << i << " is " << d << " at frequency " << grid.freqs[l];
    throw Error(ErrorCode::DegenerateSpectrum, msg.str());
  }
  return d;
}

}  // namespace

std::string_view center_mode_name(CenterMode mode) noexcept {
  switch (mode) {
    case CenterMode::oracle_mean: return "oracle_mean";
    case CenterMode::oracle_true: return "oracle_true";
    case CenterMode::plugin: return "plugin";
  }
  return "unknown";
}

std::string_view band_method_name(BandMethod method) noexcept {
  return method == BandMethod::gumbel_uniform ? "gumbel_uniform" : "clt_pointwise";
}

double gumbel_cdf(double x) noexcept { return std::exp(-std::exp(-x / 2.0)); }

double gumbel_quantile(double level) {
  check_level(level);
  return -2.0 * std::log(-std::log(level));
}

double gumbel_centering(std::size_t bandwidth) {
  if (bandwidth < 2) throw Error(ErrorCode::InvalidArgument, "centering needs B_T >= 2");
  const double lb = std::log(static_cast<double>(bandwidth));
  return 2.0 * lb - std::log(std::numbers::pi * lb);
}

double gumbel_mean() noexcept { return 2.0 * std::numbers::egamma; }

double gumbel_abs_moment(double nu) {
  if (!(nu > 0.0)) throw Error(ErrorCode::InvalidArgument, "moment order must be positive");
  // With y = exp(-x/2) the law of G becomes Exp(1): E|G|^nu = int |2 log y|^nu e^{-y} dy.
  const auto integrand = [nu](double y) { return std::pow(std::abs(2.0 * std::log(y)), nu) * std::exp(-y); };
  boost::math::quadrature::tanh_sinh<double> inner;
  boost::math::quadrature::exp_sinh<double> outer;
  const double head = inner.integrate(integrand, 0.0, 1.0);
  const double tail = outer.integrate(integrand, 1.0, std::numeric_limits<double>::infinity());
  return std::pow(head + tail, 1.0 / nu);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidLevel, "normal quantile needs 0 < p < 1");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double omega(double lambda) noexcept {
  const double r = lambda / std::numbers::pi;
  return std::abs(r - std::round(r)) <= 1e-12 ? 2.0 : 1.0;
}

MaxDeviationStat max_deviation(const SpectralGrid& est, const SpectralGrid& center,
                               const SpectralGrid& denom, const Kernel& kernel, EntryIndex entry,
                               CenterMode mode) {
  check_theorem_grid(est);
  check_entry(est, entry);
  if (center.freqs.size() != est.freqs.size() || denom.freqs.size() != est.freqs.size()) {
    throw Error(ErrorCode::InvalidArgument, "estimate, center and denominator grids differ in length");
  }
  for (std::size_t l = 0; l < est.freqs.size(); ++l) {
    if (std::abs(center.freqs[l] - est.freqs[l]) > 1e-12 || std::abs(denom.freqs[l] - est.freqs[l]) > 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "estimate, center and denominator grids differ");
    }
  }
  check_entry(center, entry);
  check_entry(denom, entry);

  const double scale = static_cast<double>(est.t_len) / static_cast<double>(est.bandwidth);
  MaxDeviationStat stat;
  stat.entry = entry;
  stat.grid_size = est.freqs.size();
  stat.center_mode = mode;
  for (std::size_t l = 0; l < est.freqs.size(); ++l) {
    const double dii = positive_diag(denom, l, entry.i);
    const double djj = positive_diag(denom, l, entry.j);
    const double dev = std::norm(est.entry(l, entry.i, entry.j) - center.entry(l, entry.i, entry.j));
    const double value = scale * dev / (kernel.kappa() * dii * djj);
    if (l == 0 || value > stat.raw_max) {
      stat.raw_max = value;
      stat.argmax = l;
    }
  }
  stat.centered = stat.raw_max - gumbel_centering(est.bandwidth);
  return stat;
}

BandResult uniform_band(const SpectralGrid& est, const Kernel& kernel, double level,
                        const std::vector<EntryIndex>& entries, bool bonferroni) {
  check_level(level);
  check_theorem_grid(est);
  if (entries.empty()) throw Error(ErrorCode::InvalidArgument, "no entries requested");
  for (const auto& e : entries) check_entry(est, e);

  BandResult band;
  band.level = level;
  band.method = BandMethod::gumbel_uniform;
  band.bonferroni_m = bonferroni ? entries.size() : 1;
  band.adjusted_level = 1.0 - (1.0 - level) / static_cast<double>(band.bonferroni_m);
  band.critical_value = gumbel_quantile(band.adjusted_level);
  band.center_mode = CenterMode::plugin;
  band.freqs = est.freqs;

  const double threshold = band.critical_value + gumbel_centering(est.bandwidth);
  if (threshold < 0.0) {
    std::ostringstream msg;
    msg << "band threshold " << threshold << " is negative at B_T = " << est.bandwidth
        << "; increase the bandwidth or the level";
    throw Error(ErrorCode::BandUndefined, msg.str());
  }
  const double scale = static_cast<double>(est.bandwidth) / static_cast<double>(est.t_len) * kernel.kappa();
  for (const auto& e : entries) {
    EntryBand eb{e, {}};
    eb.half_width.reserve(est.freqs.size());
    for (std::size_t l = 0; l < est.freqs.size(); ++l) {
      const double fii = positive_diag(est, l, e.i);
      const double fjj = positive_diag(est, l, e.j);
      eb.half_width.push_back(std::sqrt(scale * fii * fjj * threshold));
    }
    band.entries.push_back(std::move(eb));
  }
  return band;
}

PointwiseInterval pointwise_ci(const SpectralGrid& est, const Kernel& kernel, double level,
                               EntryIndex entry, double freq) {
  check_level(level);
  check_entry(est, entry);
  if (!(freq >= 0.0 && freq <= std::numbers::pi)) {
    throw Error(ErrorCode::InvalidArgument, "frequency outside [0, pi]");
  }
  if (est.t_len == 0 || est.bandwidth == 0) {
    throw Error(ErrorCode::InvalidArgument, "estimate lacks bandwidth or sample size metadata");
  }
  const auto it = std::find_if(est.freqs.begin(), est.freqs.end(),
                               [freq](double f) { return std::abs(f - freq) <= 1e-12; });
  if (it == est.freqs.end()) throw Error(ErrorCode::InvalidArgument, "frequency is not on the estimate grid");
  const auto l = static_cast<std::size_t>(it - est.freqs.begin());

  const double fii = positive_diag(est, l, entry.i);
  const double fjj = positive_diag(est, l, entry.j);
  const double z = normal_quantile(0.5 * (1.0 + level));
  const double var = static_cast<double>(est.bandwidth) / static_cast<double>(est.t_len) * omega(freq) *
                     kernel.kappa() * fii * fjj;
  const auto value = est.entry(l, entry.i, entry.j);
  PointwiseInterval ci;
  ci.half_width = z * std::sqrt(var);
  ci.lower_re = value.real() - ci.half_width;
  ci.upper_re = value.real() + ci.half_width;
  ci.lower_im = value.imag() - ci.half_width;
  ci.upper_im = value.imag() + ci.half_width;
  return ci;
}

BandResult pointwise_band(const SpectralGrid& est, const Kernel& kernel, double level,
                          const std::vector<EntryIndex>& entries, bool bonferroni) {
  check_level(level);
  if (entries.empty()) throw Error(ErrorCode::InvalidArgument, "no entries requested");
  BandResult band;
  band.level = level;
  band.method = BandMethod::clt_pointwise;
  band.bonferroni_m = bonferroni ? entries.size() : 1;
  band.adjusted_level = 1.0 - (1.0 - level) / static_cast<double>(band.bonferroni_m);
  band.critical_value = normal_quantile(0.5 * (1.0 + band.adjusted_level));
  band.center_mode = CenterMode::plugin;
  band.freqs = est.freqs;
  for (const auto& e : entries) {
    EntryBand eb{e, {}};
    for (const double f : est.freqs) {
      eb.half_width.push_back(pointwise_ci(est, kernel, band.adjusted_level, e, f).half_width);
    }
    band.entries.push_back(std::move(eb));
  }
  return band;
}

double min_plugin_eigenvalue(const SpectralGrid& est) {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& m : est.matrices) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    lowest = std::min(lowest, solver.eigenvalues().minCoeff());
  }
  return lowest;
}

SmoothnessCheck check_undersmoothing(double b_lower, double q) {
  SmoothnessCheck out{b_lower, q, b_lower * (q + 1.0), false};
  out.satisfied = std::isinf(q) ? b_lower > 0.0 : out.product > 1.0;
  return out;
}

}  // namespace lagspec
