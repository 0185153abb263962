#pragma once

#include "lagspec/acov.hpp"
#include "lagspec/kernels.hpp"
#include "lagspec/model.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace lagspec {

// Lag-window size B_T = round(c T^b), clamped to [2, T - 1].
struct Bandwidth {
  double b_exponent;
  double c_const;
  std::size_t value;

  static Bandwidth from_rule(std::size_t t_len, double b_exponent = 0.4, double c_const = 1.0);
  // Explicit B_T; the rule constants are recorded as NaN.
  static Bandwidth fixed(std::size_t value);
};

// Hermitian n x n spectral matrices on an ordered frequency list.
struct SpectralGrid {
  std::vector<double> freqs;
  std::vector<Eigen::MatrixXcd> matrices;
  std::size_t bandwidth = 0;
  std::string kernel_name;
  std::size_t t_len = 0;

  std::size_t size() const noexcept { return freqs.size(); }
  std::size_t n_dim() const noexcept {
    return matrices.empty() ? 0 : static_cast<std::size_t>(matrices.front().rows());
  }
  std::complex<double> entry(std::size_t l, std::size_t i, std::size_t j) const {
    return matrices[l](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

// (0, pi/B, ..., pi): the B + 1 frequencies pi l / B.
std::vector<double> theorem_grid(const Bandwidth& bandwidth);
// Theorem grid with `factor` points per theorem-grid spacing.
std::vector<double> refined_grid(const Bandwidth& bandwidth, std::size_t factor);
// `count` equally spaced frequencies from 0 to pi inclusive.
std::vector<double> uniform_grid(std::size_t count);

// f_T(lambda) = (1/2pi) sum_u K(u/B) exp(-i u lambda) C(u), summed directly
// over |u| <= min(B, T - 1). Frequencies must lie in [0, pi].
SpectralGrid estimate_spectrum(const AutocovSequence& acov, const Kernel& kernel,
                               const Bandwidth& bandwidth, const std::vector<double>& freqs);

// Same sum at a single, unrestricted frequency.
Eigen::MatrixXcd estimate_at(const AutocovSequence& acov, const Kernel& kernel,
                             const Bandwidth& bandwidth, double lambda);

// Exact E f_T(lambda) under `model` for sample size t_len.
SpectralGrid expected_spectrum(const ProcessModel& model, const Kernel& kernel,
                               const Bandwidth& bandwidth, std::size_t t_len,
                               const std::vector<double>& freqs);

// f(lambda) = (1/2pi) sum_u exp(-i u lambda) Gamma(u) in closed form.
SpectralGrid true_spectrum(const ProcessModel& model, const std::vector<double>& freqs);

}  // namespace lagspec
