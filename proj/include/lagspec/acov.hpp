#pragma once

#include "lagspec/model.hpp"
#include "lagspec/series.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace lagspec {

// Sample autocovariances C(u) = (1/T) sum_t Z_t Z_{t+u}' for |u| <= max_lag.
// Only u >= 0 is stored; C(-u) is served as the transpose of C(u).
class AutocovSequence {
 public:
  AutocovSequence(std::vector<Eigen::MatrixXd> nonnegative, std::size_t t_len);

  std::size_t max_lag() const noexcept { return lags_.size() - 1; }
  std::size_t t_len() const noexcept { return t_len_; }
  std::size_t n_dim() const noexcept { return static_cast<std::size_t>(lags_.front().rows()); }

  // C(u) for |u| <= max_lag; LagOutOfRange otherwise.
  Eigen::MatrixXd at(long u) const;
  const Eigen::MatrixXd& nonnegative(std::size_t u) const { return lags_.at(u); }

 private:
  std::vector<Eigen::MatrixXd> lags_;
  std::size_t t_len_;
};

// Divisor-T autocovariances up to max_lag. The series is used as given; call
// center() first for data with unknown mean.
AutocovSequence sample_autocov(const MultivariateSeries& series, std::size_t max_lag);

// Exact mean of sample_autocov for a mean-zero model: ((T - |u|)/T) Gamma(u).
Eigen::MatrixXd expected_autocov(const ProcessModel& model, long u, std::size_t t_len);

}  // namespace lagspec
