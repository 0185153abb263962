#pragma once

#include "lagspec/rng.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lagspec {

enum class ModelKind { white_noise, var1, vma, ar1_scalar, threshold_ar1 };

// Causal process Z_t = R(..., e_{t-1}, e_t) driven by iid Gaussian
// innovations e_t ~ N(0, Sigma). Linear models expose their moving-average
// weights and closed-form autocovariances; the threshold AR(1) model
//   Z_t = a max(Z_{t-1}, 0) + b min(Z_{t-1}, 0) + e_t
// is simulable only.
class ProcessModel {
 public:
  static ProcessModel white_noise(Eigen::MatrixXd sigma);
  static ProcessModel white_noise(std::size_t n, double variance = 1.0);
  static ProcessModel ar1(double phi, double sigma2 = 1.0);
  static ProcessModel var1(Eigen::MatrixXd a, Eigen::MatrixXd sigma);
  // Z_t = sum_j B_j e_{t-j}; B_j is n x b and Sigma is b x b.
  static ProcessModel vma(std::vector<Eigen::MatrixXd> coeffs, Eigen::MatrixXd sigma);
  static ProcessModel threshold_ar1(double a, double b, double sigma2 = 1.0);

  // Bivariate VAR(1) with A = [[0.4, 0.1], [0, 0.3]] and Sigma = I.
  static ProcessModel default_var1();

  // white[:n=..,sigma2=..] | ar1:phi=..[,sigma2=..] | var1[:file=A.csv,sigma=S.csv]
  // | vma:file=B0.csv;B1.csv[,sigma=S.csv] | tar:a=..,b=..[,sigma2=..]
  static ProcessModel parse(std::string_view spec);

  ModelKind kind() const noexcept { return kind_; }
  std::string_view kind_name() const noexcept;
  std::size_t n_dim() const noexcept { return n_; }
  std::size_t innovation_dim() const noexcept { return static_cast<std::size_t>(sigma_.rows()); }
  bool is_linear() const noexcept { return kind_ != ModelKind::threshold_ar1; }
  bool has_closed_form() const noexcept { return is_linear(); }

  const Eigen::MatrixXd& innovation_cov() const noexcept { return sigma_; }
  const Eigen::MatrixXd& transition() const noexcept { return a_; }
  const std::vector<Eigen::MatrixXd>& ma_coeffs() const noexcept { return b_; }
  double threshold_pos() const noexcept { return tar_pos_; }
  double threshold_neg() const noexcept { return tar_neg_; }

  // Gamma(u) = E(Z_0 Z_u'); UnsupportedModel for nonlinear models.
  Eigen::MatrixXd autocov(long u) const;

  // Weight Psi_j of e_{t-j} in Z_t (n x b); UnsupportedModel when nonlinear.
  Eigen::MatrixXd ma_weight(std::size_t j) const;

  // Geometric contraction rate of the causal map (0 for white noise).
  double contraction_rate() const noexcept { return rate_; }
  // Lags after which the influence of older innovations is below
  // truncation_error_bound() (relative to the innovation scale).
  std::size_t truncation_horizon() const noexcept;
  double truncation_error_bound() const noexcept;

  std::string describe() const;

  // count x b matrix of iid N(0, Sigma) rows.
  Eigen::MatrixXd draw_innovations(std::size_t count, Rng& rng) const;
  // Runs the causal recursion from a zero state; row k of the result is the
  // observation driven by innovation rows 0..k.
  Eigen::MatrixXd run(const Eigen::MatrixXd& innovations) const;
  // One step of the recursion for scalar-state models (ar1, tar).
  double scalar_step(double previous, double innovation) const noexcept;

 private:
  ProcessModel() = default;
  void finish();

  ModelKind kind_ = ModelKind::white_noise;
  std::size_t n_ = 1;
  Eigen::MatrixXd sigma_;
  Eigen::MatrixXd chol_;
  Eigen::MatrixXd a_;               // var1 / ar1 transition
  std::vector<Eigen::MatrixXd> b_;  // vma weights
  double tar_pos_ = 0.0;
  double tar_neg_ = 0.0;
  double rate_ = 0.0;
  Eigen::MatrixXd gamma0_;  // stationary covariance for var1 / ar1
};

// Innovations burned before the first returned observation.
std::size_t burn_in_length(const ProcessModel& model);

}  // namespace lagspec
