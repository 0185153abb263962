#pragma once

#include "lagspec/kernels.hpp"
#include "lagspec/spectral.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace lagspec {

// All logarithms in this module are natural logarithms: the limit law
// exp(-exp(-x/2)) and the centering 2 log B - log(pi log B) share that base.

// What the deviation is measured against and what normalizes it.
//   oracle_mean: center E f_T, denominator true f (verification)
//   oracle_true: center true f, denominator true f
//   plugin:      denominator from the estimate itself (production bands)
enum class CenterMode { oracle_mean, oracle_true, plugin };
std::string_view center_mode_name(CenterMode mode) noexcept;

struct EntryIndex {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const EntryIndex&, const EntryIndex&) = default;
};

struct MaxDeviationStat {
  EntryIndex entry;
  double raw_max = 0.0;   // max_l (T/B) |est - center|^2 / (kappa d_ii d_jj)
  double centered = 0.0;  // raw_max - 2 log B + log(pi log B)
  std::size_t grid_size = 0;
  std::size_t argmax = 0;
  CenterMode center_mode = CenterMode::oracle_mean;
};

double gumbel_cdf(double x) noexcept;
// Inverse of gumbel_cdf; InvalidLevel unless 0 < level < 1.
double gumbel_quantile(double level);
// 2 log B - log(pi log B).
double gumbel_centering(std::size_t bandwidth);
// Mean of the limit law, twice the Euler-Mascheroni constant.
double gumbel_mean() noexcept;
// (E|G|^nu)^{1/nu} for the law exp(-exp(-x/2)), by quadrature.
double gumbel_abs_moment(double nu);

double normal_quantile(double p);
// 2 when lambda is a multiple of pi, 1 otherwise.
double omega(double lambda) noexcept;

// All three grids must hold the theorem grid of est.bandwidth.
MaxDeviationStat max_deviation(const SpectralGrid& est, const SpectralGrid& center,
                               const SpectralGrid& denom, const Kernel& kernel, EntryIndex entry,
                               CenterMode mode = CenterMode::oracle_mean);

enum class BandMethod { gumbel_uniform, clt_pointwise };
std::string_view band_method_name(BandMethod method) noexcept;

struct EntryBand {
  EntryIndex entry;
  std::vector<double> half_width;  // one per grid frequency
};

struct BandResult {
  double level = 0.95;
  BandMethod method = BandMethod::gumbel_uniform;
  std::size_t bonferroni_m = 1;
  double adjusted_level = 0.95;  // per-entry level after the Bonferroni split
  double critical_value = 0.0;   // Gumbel or normal quantile actually used
  CenterMode center_mode = CenterMode::plugin;
  std::vector<double> freqs;
  std::vector<EntryBand> entries;
};

// Simultaneous band over the theorem grid from the Gumbel limit with plug-in
// denominators. With bonferroni the error budget is split over the entries.
BandResult uniform_band(const SpectralGrid& est, const Kernel& kernel, double level,
                        const std::vector<EntryIndex>& entries, bool bonferroni);

struct PointwiseInterval {
  double half_width = 0.0;  // applied to the real and imaginary parts separately
  double lower_re = 0.0;
  double upper_re = 0.0;
  double lower_im = 0.0;
  double upper_im = 0.0;
};

// CLT interval at one frequency of `est` (must be one of est.freqs).
PointwiseInterval pointwise_ci(const SpectralGrid& est, const Kernel& kernel, double level,
                               EntryIndex entry, double freq);

// Pointwise intervals at every grid frequency, packed like a band.
BandResult pointwise_band(const SpectralGrid& est, const Kernel& kernel, double level,
                          const std::vector<EntryIndex>& entries, bool bonferroni);

// Smallest eigenvalue of the estimate over the grid; diagnostic only.
double min_plugin_eigenvalue(const SpectralGrid& est);

// b_lower (q + 1) > 1: bias of order B^{-q} is negligible against the
// stochastic error, so bands may be read as bands for f itself.
struct SmoothnessCheck {
  double b_lower = 0.0;
  double q = 0.0;
  double product = 0.0;
  bool satisfied = false;
};
SmoothnessCheck check_undersmoothing(double b_lower, double q);

}  // namespace lagspec
