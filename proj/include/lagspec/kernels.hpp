#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lagspec {

enum class KernelKind { bartlett, parzen, tukey_hanning, truncated, tabulated };

// Behaviour of 1 - K(x) near the origin, lim (1 - K(x)) / |x|^q = K_q.
struct BiasOrder {
  double q;                   // +inf for the truncated window; NaN when unknown
  std::optional<double> k_q;  // empty when the limit is infinite or unknown
  // For Bartlett the tabulated q differs from the one obtained by expanding
  // 1 - K(x); the expansion-based pair is kept here and `note` says why.
  std::optional<double> expansion_q;
  std::optional<double> expansion_k_q;
  std::string note;
};

// Even lag window supported on [-1, 1] with K(0) = 1.
class Kernel {
 public:
  static Kernel bartlett();
  static Kernel parzen();
  static Kernel tukey_hanning();
  static Kernel truncated();

  // Piecewise-linear kernel through (u, K(u)) on a grid symmetric about 0
  // that contains 0 with K(0) = 1 and lies inside [-1, 1].
  static Kernel tabulated(std::vector<double> u, std::vector<double> k);
  // Two-column CSV (u, K(u)); a non-numeric first line is taken as header.
  static Kernel load_table(const std::filesystem::path& path);

  // Accepts bartlett | parzen | tukey | tukey_hanning | truncated | file:<path>.
  static Kernel from_name(std::string_view name);

  KernelKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  double operator()(double u) const noexcept;
  double kappa() const noexcept { return kappa_; }
  const BiasOrder& bias_order() const noexcept { return bias_; }

  // True when the window's Fourier transform is nonnegative, which makes
  // lag-window estimates built from divisor-T autocovariances PSD.
  bool psd_guarantee() const noexcept { return psd_; }

  // Non-fatal admissibility notes, e.g. kappa >= 1.
  std::vector<std::string> warnings() const;

 private:
  struct Table {
    std::vector<double> u;  // nonnegative half, increasing, u[0] = 0
    std::vector<double> k;
  };

  Kernel(KernelKind kind, std::string name, double kappa, BiasOrder bias, bool psd,
         std::shared_ptr<const Table> table = nullptr);

  KernelKind kind_;
  std::string name_;
  double kappa_;
  BiasOrder bias_;
  bool psd_;
  std::shared_ptr<const Table> table_;
};

}  // namespace lagspec
