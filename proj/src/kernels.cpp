#include "lagspec/kernels.hpp"

#include "lagspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace lagspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double parzen_weight(double a) {
  if (a <= 0.5) return 1.0 - 6.0 * a * a + 6.0 * a * a * a;
  const double r = 1.0 - a;
  return 2.0 * r * r * r;
}

}  // namespace

Kernel::Kernel(KernelKind kind, std::string name, double kappa, BiasOrder bias, bool psd,
               std::shared_ptr<const Table> table)
    : kind_(kind),
      name_(std::move(name)),
      kappa_(kappa),
      bias_(std::move(bias)),
      psd_(psd),
      table_(std::move(table)) {}

Kernel Kernel::bartlett() {
  // 1 - K(x) = |x| exactly, so the expansion gives q = 1 with K_q = 1; the
  // commonly quoted q = 2 is what bias_order() reports as the primary value.
  BiasOrder bias{2.0, std::nullopt, 1.0, 1.0,
                 "q = 2 is the quoted bias order; 1 - K(x) = |x| gives q = 1, K_q = 1. "
                 "The bias-rate experiment reports the fitted slope instead of asserting either."};
  return Kernel(KernelKind::bartlett, "bartlett", 2.0 / 3.0, std::move(bias), true);
}

Kernel Kernel::parzen() {
  return Kernel(KernelKind::parzen, "parzen", 151.0 / 280.0, BiasOrder{2.0, 6.0, 2.0, 6.0, ""}, true);
}

Kernel Kernel::tukey_hanning() {
  const double kq = std::numbers::pi * std::numbers::pi / 4.0;
  return Kernel(KernelKind::tukey_hanning, "tukey_hanning", 0.75, BiasOrder{2.0, kq, 2.0, kq, ""},
                false);
}

Kernel Kernel::truncated() {
  return Kernel(KernelKind::truncated, "truncated", 2.0,
                BiasOrder{kInf, std::nullopt, kInf, std::nullopt, ""}, false);
}

Kernel Kernel::tabulated(std::vector<double> u, std::vector<double> k) {
  if (u.size() != k.size() || u.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "tabulated kernel needs >= 3 (u, K(u)) pairs");
  }
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(k[i])) {
      throw Error(ErrorCode::InvalidArgument, "tabulated kernel has non-finite entries");
    }
    if (i > 0 && !(u[i] > u[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "tabulated kernel grid must be strictly increasing");
    }
    if (std::abs(u[i] + u[n - 1 - i]) > 1e-12 || std::abs(k[i] - k[n - 1 - i]) > 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "tabulated kernel must be even on a symmetric grid");
    }
  }
  if (u.back() > 1.0 + 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "tabulated kernel support exceeds [-1, 1]");
  }
  if (n % 2 == 0 || std::abs(u[n / 2]) > 1e-12 || std::abs(k[n / 2] - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "tabulated kernel grid must contain u = 0 with K(0) = 1");
  }

  auto table = std::make_shared<Table>();
  table->u.assign(u.begin() + static_cast<std::ptrdiff_t>(n / 2), u.end());
  table->k.assign(k.begin() + static_cast<std::ptrdiff_t>(n / 2), k.end());
  table->u.front() = 0.0;
  table->k.front() = 1.0;

  // Simpson's rule is exact for the squared linear pieces.
  double half = 0.0;
  for (std::size_t i = 1; i < table->u.size(); ++i) {
    const double h = table->u[i] - table->u[i - 1];
    const double a = table->k[i - 1];
    const double b = table->k[i];
    half += h * (a * a + a * b + b * b) / 3.0;
  }
  BiasOrder bias{kNaN, std::nullopt, std::nullopt, std::nullopt,
                 "bias order is not determined for tabulated kernels"};
  return Kernel(KernelKind::tabulated, "tabulated", 2.0 * half, std::move(bias), false,
                std::move(table));
}

Kernel Kernel::load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open kernel table " + path.string());
  std::vector<double> u;
  std::vector<double> k;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double a = 0.0;
    double b = 0.0;
    if (!(fields >> a >> b)) {
      if (line_no == 1) continue;
      throw Error(ErrorCode::ParseError,
                  "kernel table " + path.string() + " line " + std::to_string(line_no));
    }
    u.push_back(a);
    k.push_back(b);
  }
  return tabulated(std::move(u), std::move(k));
}

Kernel Kernel::from_name(std::string_view name) {
  if (name == "bartlett") return bartlett();
  if (name == "parzen") return parzen();
  if (name == "tukey" || name == "tukey_hanning") return tukey_hanning();
  if (name == "truncated") return truncated();
  if (name.starts_with("file:")) return load_table(std::filesystem::path(std::string(name.substr(5))));
  throw Error(ErrorCode::InvalidArgument, "unknown kernel '" + std::string(name) + "'");
}

double Kernel::operator()(double u) const noexcept {
  const double a = std::abs(u);
  if (a > 1.0) return 0.0;
  switch (kind_) {
    case KernelKind::bartlett: return 1.0 - a;
    case KernelKind::parzen: return parzen_weight(a);
    case KernelKind::tukey_hanning: return 0.5 * (1.0 + std::cos(std::numbers::pi * a));
    case KernelKind::truncated: return 1.0;
    case KernelKind::tabulated: {
      const auto& tu = table_->u;
      const auto& tk = table_->k;
      if (a > tu.back()) return 0.0;
      const auto it = std::upper_bound(tu.begin(), tu.end(), a);
      if (it == tu.end()) return tk.back();
      const auto hi = static_cast<std::size_t>(it - tu.begin());
      const auto lo = hi - 1;
      const double w = (a - tu[lo]) / (tu[hi] - tu[lo]);
      return tk[lo] + w * (tk[hi] - tk[lo]);
    }
  }
  return 0.0;
}

std::vector<std::string> Kernel::warnings() const {
  std::vector<std::string> out;
  if (kappa_ >= 1.0) {
    std::ostringstream msg;
    msg << "kappa = " << kappa_ << " >= 1; treated as admissible (only kappa < inf is used)";
    out.push_back(msg.str());
  }
  if (kind_ == KernelKind::tabulated) {
    out.push_back("shift-sum regularity of the tabulated kernel is not checked");
  }
  return out;
}

}  // namespace lagspec
