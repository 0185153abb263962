#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>

namespace lagspec {

// T x n block of real observations; row t is the observation at time t,
// column i is component i. Immutable after construction.
class MultivariateSeries {
 public:
  // Throws InsufficientData when T < 2 or n < 1 and NonFinite when any
  // entry is NaN or infinite.
  explicit MultivariateSeries(Eigen::MatrixXd values, bool centered = false);

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  std::size_t t_len() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t n_dim() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  bool centered() const noexcept { return centered_; }

  double operator()(std::size_t t, std::size_t i) const {
    return values_(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i));
  }

 private:
  Eigen::MatrixXd values_;
  bool centered_;
};

// Reads a comma-separated file, one row per time point. Errors carry 1-based
// (data row, column) coordinates; the header row is not counted.
MultivariateSeries load_csv(const std::filesystem::path& path, bool has_header);

// Writes every value with 17 significant digits so that load_csv returns the
// same doubles bit for bit.
void write_csv(const MultivariateSeries& series, const std::filesystem::path& path);

// Sample-mean removal. A series already flagged as centered is returned
// unchanged, which makes the operation exactly idempotent.
MultivariateSeries center(const MultivariateSeries& series);

}  // namespace lagspec
