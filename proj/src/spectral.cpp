#include "lagspec/spectral.hpp"

#include "lagspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace lagspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_bandwidth(const Bandwidth& bandwidth, std::size_t t_len) {
  if (bandwidth.value >= t_len) {
    throw Error(ErrorCode::BandwidthTooLarge, "B_T = " + std::to_string(bandwidth.value) +
                                                  " must be below T = " + std::to_string(t_len));
  }
  if (bandwidth.value < 1) throw Error(ErrorCode::InvalidArgument, "B_T must be positive");
}

void check_freqs(const std::vector<double>& freqs) {
  for (const double f : freqs) {
    if (!(f >= 0.0 && f <= std::numbers::pi)) {
      throw Error(ErrorCode::InvalidArgument, "frequency " + std::to_string(f) + " outside [0, pi]");
    }
  }
}

// (1/2pi) [W(0) + sum_{u>=1} w_u (e^{-iu lambda} W(u) + e^{iu lambda} W(u)')].
// Real and imaginary parts are accumulated so that entry (j, i) is the exact
// conjugate of entry (i, j).
Eigen::MatrixXcd lag_window_sum(const std::vector<double>& weights,
                                const std::function<const Eigen::MatrixXd&(std::size_t)>& lag,
                                double lambda) {
  const Eigen::MatrixXd& c0 = lag(0);
  Eigen::MatrixXd re = c0 * weights[0];
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(c0.rows(), c0.cols());
  for (std::size_t u = 1; u < weights.size(); ++u) {
    const double w = weights[u];
    if (w == 0.0) continue;
    const double angle = static_cast<double>(u) * lambda;
    const double c = w * std::cos(angle);
    const double s = w * std::sin(angle);
    const Eigen::MatrixXd& cu = lag(u);
    re.noalias() += c * (cu + cu.transpose());
    im.noalias() += s * (cu.transpose() - cu);
  }
  Eigen::MatrixXcd out(re.rows(), re.cols());
  out.real() = re / kTwoPi;
  out.imag() = im / kTwoPi;
  return out;
}

std::vector<double> lag_weights(const Kernel& kernel, const Bandwidth& bandwidth, std::size_t t_len) {
  const std::size_t top = std::min(bandwidth.value, t_len - 1);
  std::vector<double> w(top + 1);
  const double b = static_cast<double>(bandwidth.value);
  for (std::size_t u = 0; u <= top; ++u) w[u] = kernel(static_cast<double>(u) / b);
  return w;
}

}  // namespace

Bandwidth Bandwidth::from_rule(std::size_t t_len, double b_exponent, double c_const) {
  if (!(b_exponent > 0.0 && b_exponent < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "bandwidth exponent must lie in (0, 1)");
  }
  if (!(c_const > 0.0) || !std::isfinite(c_const)) {
    throw Error(ErrorCode::InvalidArgument, "bandwidth constant must be positive");
  }
  if (t_len < 3) throw Error(ErrorCode::BandwidthTooLarge, "T must be at least 3 for B_T >= 2");
  const double raw = std::round(c_const * std::pow(static_cast<double>(t_len), b_exponent));
  const double clamped = std::clamp(raw, 2.0, static_cast<double>(t_len - 1));
  return Bandwidth{b_exponent, c_const, static_cast<std::size_t>(clamped)};
}

Bandwidth Bandwidth::fixed(std::size_t value) {
  if (value < 1) throw Error(ErrorCode::InvalidArgument, "B_T must be positive");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return Bandwidth{nan, nan, value};
}

std::vector<double> theorem_grid(const Bandwidth& bandwidth) { return refined_grid(bandwidth, 1); }

std::vector<double> refined_grid(const Bandwidth& bandwidth, std::size_t factor) {
  if (bandwidth.value < 1 || factor < 1) throw Error(ErrorCode::InvalidArgument, "empty grid");
  const std::size_t steps = bandwidth.value * factor;
  std::vector<double> grid(steps + 1);
  for (std::size_t l = 0; l <= steps; ++l) {
    grid[l] = std::numbers::pi * static_cast<double>(l) / static_cast<double>(steps);
  }
  grid.back() = std::numbers::pi;
  return grid;
}

std::vector<double> uniform_grid(std::size_t count) {
  if (count < 2) throw Error(ErrorCode::InvalidArgument, "uniform grid needs at least 2 points");
  std::vector<double> grid(count);
  for (std::size_t l = 0; l < count; ++l) {
    grid[l] = std::numbers::pi * static_cast<double>(l) / static_cast<double>(count - 1);
  }
  grid.back() = std::numbers::pi;
  return grid;
}

Eigen::MatrixXcd estimate_at(const AutocovSequence& acov, const Kernel& kernel,
                             const Bandwidth& bandwidth, double lambda) {
  check_bandwidth(bandwidth, acov.t_len());
  const auto weights = lag_weights(kernel, bandwidth, acov.t_len());
  if (acov.max_lag() + 1 < weights.size()) {
    throw Error(ErrorCode::LagOutOfRange, "autocovariances stop at lag " + std::to_string(acov.max_lag()) +
                                              ", estimator needs " + std::to_string(weights.size() - 1));
  }
  return lag_window_sum(
      weights, [&acov](std::size_t u) -> const Eigen::MatrixXd& { return acov.nonnegative(u); }, lambda);
}

SpectralGrid estimate_spectrum(const AutocovSequence& acov, const Kernel& kernel,
                               const Bandwidth& bandwidth, const std::vector<double>& freqs) {
  check_bandwidth(bandwidth, acov.t_len());
  check_freqs(freqs);
  const auto weights = lag_weights(kernel, bandwidth, acov.t_len());
  if (acov.max_lag() + 1 < weights.size()) {
    throw Error(ErrorCode::LagOutOfRange, "autocovariances stop at lag " + std::to_string(acov.max_lag()) +
                                              ", estimator needs " + std::to_string(weights.size() - 1));
  }
  SpectralGrid grid{freqs, {}, bandwidth.value, kernel.name(), acov.t_len()};
  grid.matrices.reserve(freqs.size());
  const auto lag = [&acov](std::size_t u) -> const Eigen::MatrixXd& { return acov.nonnegative(u); };
  for (const double f : freqs) grid.matrices.push_back(lag_window_sum(weights, lag, f));
  return grid;
}

SpectralGrid expected_spectrum(const ProcessModel& model, const Kernel& kernel,
                               const Bandwidth& bandwidth, std::size_t t_len,
                               const std::vector<double>& freqs) {
  check_bandwidth(bandwidth, t_len);
  check_freqs(freqs);
  const auto weights = lag_weights(kernel, bandwidth, t_len);
  std::vector<Eigen::MatrixXd> means;
  means.reserve(weights.size());
  for (std::size_t u = 0; u < weights.size(); ++u) {
    means.push_back(expected_autocov(model, static_cast<long>(u), t_len));
  }
  SpectralGrid grid{freqs, {}, bandwidth.value, kernel.name(), t_len};
  grid.matrices.reserve(freqs.size());
  const auto lag = [&means](std::size_t u) -> const Eigen::MatrixXd& { return means[u]; };
  for (const double f : freqs) grid.matrices.push_back(lag_window_sum(weights, lag, f));
  return grid;
}

SpectralGrid true_spectrum(const ProcessModel& model, const std::vector<double>& freqs) {
  check_freqs(freqs);
  const auto n = static_cast<Eigen::Index>(model.n_dim());
  const Eigen::MatrixXcd sigma = model.innovation_cov().cast<std::complex<double>>();
  SpectralGrid grid{freqs, {}, 0, "true", 0};
  grid.matrices.reserve(freqs.size());
  for (const double f : freqs) {
    // With Gamma(u) = E(Z_0 Z_u') the transfer function enters as
    // H(e^{i lambda}) Sigma H(e^{i lambda})^*.
    const std::complex<double> z = std::polar(1.0, f);
    Eigen::MatrixXcd h;
    switch (model.kind()) {
      case ModelKind::white_noise:
        h = Eigen::MatrixXcd::Identity(n, n);
        break;
      case ModelKind::ar1_scalar:
      case ModelKind::var1: {
        const Eigen::MatrixXcd a = model.transition().cast<std::complex<double>>();
        h = (Eigen::MatrixXcd::Identity(n, n) - a * z).inverse();
        break;
      }
      case ModelKind::vma: {
        const auto& b = model.ma_coeffs();
        h = Eigen::MatrixXcd::Zero(n, b.front().cols());
        std::complex<double> zj = 1.0;
        for (const auto& bj : b) {
          h += bj.cast<std::complex<double>>() * zj;
          zj *= z;
        }
        break;
      }
      case ModelKind::threshold_ar1:
        throw Error(ErrorCode::UnsupportedModel, "threshold AR(1) has no closed-form spectrum");
    }
    Eigen::MatrixXcd m = h * sigma * h.adjoint() / kTwoPi;
    m = (0.5 * (m + m.adjoint())).eval();
    grid.matrices.push_back(std::move(m));
  }
  return grid;
}

}  // namespace lagspec
