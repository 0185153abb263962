#include "lagspec/model.hpp"

#include "lagspec/error.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace lagspec {

namespace {

constexpr double kTruncationTarget = 1e-16;

double spectral_radius(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  return a.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd checked_cholesky(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "innovation covariance must be square and nonempty");
  }
  if (!sigma.allFinite() || (sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "innovation covariance must be finite and symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument, "innovation covariance is not positive definite");
  }
  return llt.matrixL();
}

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument,
                "bad value '" + std::string(text) + "' for " + std::string(what));
  }
  return v;
}

Eigen::MatrixXd load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open matrix file " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<double> row;
    double v = 0.0;
    while (fields >> v) row.push_back(v);
    if (!fields.eof()) throw Error(ErrorCode::ParseError, "non-numeric cell in " + path);
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::ParseError, "ragged matrix in " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "empty matrix file " + path);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

// "k1=v1,k2=v2" -> map; values may contain ';'.
std::map<std::string, std::string> parse_params(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = text.substr(start, comma - start);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorCode::InvalidArgument, "model parameter '" + std::string(item) + "' is not key=value");
    }
    out.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    start = comma + 1;
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

void ProcessModel::finish() {
  chol_ = checked_cholesky(sigma_);
  switch (kind_) {
    case ModelKind::white_noise:
      n_ = static_cast<std::size_t>(sigma_.rows());
      rate_ = 0.0;
      break;
    case ModelKind::ar1_scalar:
    case ModelKind::var1: {
      if (a_.rows() != a_.cols() || a_.rows() != sigma_.rows() || !a_.allFinite()) {
        throw Error(ErrorCode::InvalidArgument, "transition matrix must be square and match Sigma");
      }
      n_ = static_cast<std::size_t>(a_.rows());
      rate_ = spectral_radius(a_);
      if (rate_ >= 1.0) {
        throw Error(ErrorCode::NonStationaryModel,
                    "spectral radius " + fmt(rate_) + " of the transition matrix is >= 1");
      }
      // Gamma(0) = A Gamma(0) A' + Sigma, solved in vectorised form.
      const auto nn = a_.rows() * a_.rows();
      const Eigen::MatrixXd lhs =
          Eigen::MatrixXd::Identity(nn, nn) - Eigen::kroneckerProduct(a_, a_).eval();
      const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(sigma_.data(), nn);
      const Eigen::VectorXd sol = lhs.partialPivLu().solve(rhs);
      gamma0_ = Eigen::Map<const Eigen::MatrixXd>(sol.data(), a_.rows(), a_.rows());
      gamma0_ = 0.5 * (gamma0_ + gamma0_.transpose()).eval();
      break;
    }
    case ModelKind::vma: {
      if (b_.empty()) throw Error(ErrorCode::InvalidArgument, "vma needs at least B_0");
      for (const auto& b : b_) {
        if (b.rows() != b_.front().rows() || b.cols() != sigma_.rows() || !b.allFinite()) {
          throw Error(ErrorCode::InvalidArgument, "vma coefficients must be finite n x b matrices");
        }
      }
      n_ = static_cast<std::size_t>(b_.front().rows());
      rate_ = 0.0;
      break;
    }
    case ModelKind::threshold_ar1:
      if (sigma_.rows() != 1) throw Error(ErrorCode::InvalidArgument, "tar model is scalar");
      n_ = 1;
      if (!(std::abs(tar_pos_) + std::abs(tar_neg_) < 1.0)) {
        throw Error(ErrorCode::NonStationaryModel, "threshold model needs |a| + |b| < 1");
      }
      rate_ = std::max(std::abs(tar_pos_), std::abs(tar_neg_));
      break;
  }
}

ProcessModel ProcessModel::white_noise(Eigen::MatrixXd sigma) {
  ProcessModel m;
  m.kind_ = ModelKind::white_noise;
  m.sigma_ = std::move(sigma);
  m.finish();
  return m;
}

ProcessModel ProcessModel::white_noise(std::size_t n, double variance) {
  const auto k = static_cast<Eigen::Index>(n);
  return white_noise(Eigen::MatrixXd::Identity(k, k) * variance);
}

ProcessModel ProcessModel::ar1(double phi, double sigma2) {
  ProcessModel m;
  m.kind_ = ModelKind::ar1_scalar;
  m.a_ = Eigen::MatrixXd::Constant(1, 1, phi);
  m.sigma_ = Eigen::MatrixXd::Constant(1, 1, sigma2);
  m.finish();
  return m;
}

ProcessModel ProcessModel::var1(Eigen::MatrixXd a, Eigen::MatrixXd sigma) {
  ProcessModel m;
  m.kind_ = ModelKind::var1;
  m.a_ = std::move(a);
  m.sigma_ = std::move(sigma);
  m.finish();
  return m;
}

ProcessModel ProcessModel::vma(std::vector<Eigen::MatrixXd> coeffs, Eigen::MatrixXd sigma) {
  ProcessModel m;
  m.kind_ = ModelKind::vma;
  m.b_ = std::move(coeffs);
  m.sigma_ = std::move(sigma);
  m.finish();
  return m;
}

ProcessModel ProcessModel::threshold_ar1(double a, double b, double sigma2) {
  ProcessModel m;
  m.kind_ = ModelKind::threshold_ar1;
  m.tar_pos_ = a;
  m.tar_neg_ = b;
  m.sigma_ = Eigen::MatrixXd::Constant(1, 1, sigma2);
  m.finish();
  return m;
}

ProcessModel ProcessModel::default_var1() {
  Eigen::MatrixXd a(2, 2);
  a << 0.4, 0.1, 0.0, 0.3;
  return var1(a, Eigen::MatrixXd::Identity(2, 2));
}

ProcessModel ProcessModel::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string head(spec.substr(0, colon));
  const auto params = colon == std::string_view::npos ? std::map<std::string, std::string>{}
                                                      : parse_params(spec.substr(colon + 1));
  const auto take = [&params](const std::string& key, std::initializer_list<std::string> allowed) {
    for (const auto& [k, v] : params) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        throw Error(ErrorCode::InvalidArgument, "unknown model parameter '" + k + "'");
      }
    }
    const auto it = params.find(key);
    return it == params.end() ? std::string() : it->second;
  };

  if (head == "white") {
    const auto n_text = take("n", {"n", "sigma2"});
    const auto v_text = take("sigma2", {"n", "sigma2"});
    const double n = n_text.empty() ? 1.0 : parse_number(n_text, "n");
    if (n < 1 || n != std::floor(n)) throw Error(ErrorCode::InvalidArgument, "white: n must be a positive integer");
    return white_noise(static_cast<std::size_t>(n), v_text.empty() ? 1.0 : parse_number(v_text, "sigma2"));
  }
  if (head == "ar1") {
    const auto phi = take("phi", {"phi", "sigma2"});
    const auto v = take("sigma2", {"phi", "sigma2"});
    if (phi.empty()) throw Error(ErrorCode::InvalidArgument, "ar1 needs phi=");
    return ar1(parse_number(phi, "phi"), v.empty() ? 1.0 : parse_number(v, "sigma2"));
  }
  if (head == "var1") {
    if (params.empty()) return default_var1();
    const auto file = take("file", {"file", "sigma"});
    const auto sigma = take("sigma", {"file", "sigma"});
    if (file.empty()) throw Error(ErrorCode::InvalidArgument, "var1 needs file=A.csv");
    Eigen::MatrixXd a = load_matrix(file);
    Eigen::MatrixXd s = sigma.empty() ? Eigen::MatrixXd::Identity(a.rows(), a.rows()) : load_matrix(sigma);
    return var1(std::move(a), std::move(s));
  }
  if (head == "vma") {
    const auto files = take("file", {"file", "sigma"});
    const auto sigma = take("sigma", {"file", "sigma"});
    if (files.empty()) throw Error(ErrorCode::InvalidArgument, "vma needs file=B0.csv;B1.csv;...");
    std::vector<Eigen::MatrixXd> coeffs;
    std::size_t start = 0;
    while (start <= files.size()) {
      auto semi = files.find(';', start);
      if (semi == std::string::npos) semi = files.size();
      if (semi > start) coeffs.push_back(load_matrix(files.substr(start, semi - start)));
      start = semi + 1;
    }
    if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "vma needs at least one file");
    Eigen::MatrixXd s = sigma.empty() ? Eigen::MatrixXd::Identity(coeffs[0].cols(), coeffs[0].cols())
                                      : load_matrix(sigma);
    return vma(std::move(coeffs), std::move(s));
  }
  if (head == "tar") {
    const auto a = take("a", {"a", "b", "sigma2"});
    const auto b = take("b", {"a", "b", "sigma2"});
    const auto v = take("sigma2", {"a", "b", "sigma2"});
    if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "tar needs a= and b=");
    return threshold_ar1(parse_number(a, "a"), parse_number(b, "b"), v.empty() ? 1.0 : parse_number(v, "sigma2"));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown model '" + head + "'");
}

std::string_view ProcessModel::kind_name() const noexcept {
  switch (kind_) {
    case ModelKind::white_noise: return "white_noise";
    case ModelKind::var1: return "var1";
    case ModelKind::vma: return "vma";
    case ModelKind::ar1_scalar: return "ar1_scalar";
    case ModelKind::threshold_ar1: return "threshold_ar1";
  }
  return "unknown";
}

std::string ProcessModel::describe() const {
  std::ostringstream s;
  s.precision(17);
  switch (kind_) {
    case ModelKind::white_noise:
      s << "white:n=" << n_;
      break;
    case ModelKind::ar1_scalar:
      s << "ar1:phi=" << a_(0, 0) << ",sigma2=" << sigma_(0, 0);
      break;
    case ModelKind::var1:
      s << "var1:n=" << n_;
      break;
    case ModelKind::vma:
      s << "vma:n=" << n_ << ",order=" << (b_.size() - 1);
      break;
    case ModelKind::threshold_ar1:
      s << "tar:a=" << tar_pos_ << ",b=" << tar_neg_ << ",sigma2=" << sigma_(0, 0);
      break;
  }
  return s.str();
}

Eigen::MatrixXd ProcessModel::autocov(long u) const {
  const auto n = static_cast<Eigen::Index>(n_);
  const long au = u < 0 ? -u : u;
  Eigen::MatrixXd g;
  switch (kind_) {
    case ModelKind::white_noise:
      g = au == 0 ? sigma_ : Eigen::MatrixXd::Zero(n, n);
      break;
    case ModelKind::ar1_scalar:
    case ModelKind::var1: {
      // E(Z_0 Z_u') = Gamma(0) (A')^u for u >= 0.
      Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
      for (long k = 0; k < au; ++k) power = (power * a_.transpose()).eval();
      g = gamma0_ * power;
      break;
    }
    case ModelKind::vma: {
      g = Eigen::MatrixXd::Zero(n, n);
      const auto q = static_cast<long>(b_.size()) - 1;
      for (long j = 0; j + au <= q; ++j) {
        g += b_[static_cast<std::size_t>(j)] * sigma_ * b_[static_cast<std::size_t>(j + au)].transpose();
      }
      break;
    }
    case ModelKind::threshold_ar1:
      throw Error(ErrorCode::UnsupportedModel, "threshold AR(1) has no closed-form autocovariance");
  }
  return u < 0 ? Eigen::MatrixXd(g.transpose()) : g;
}

Eigen::MatrixXd ProcessModel::ma_weight(std::size_t j) const {
  const auto n = static_cast<Eigen::Index>(n_);
  const auto b = static_cast<Eigen::Index>(innovation_dim());
  switch (kind_) {
    case ModelKind::white_noise:
      return j == 0 ? Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n)) : Eigen::MatrixXd(Eigen::MatrixXd::Zero(n, n));
    case ModelKind::ar1_scalar:
    case ModelKind::var1: {
      Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
      for (std::size_t k = 0; k < j; ++k) power = (power * a_).eval();
      return power;
    }
    case ModelKind::vma:
      return j < b_.size() ? b_[j] : Eigen::MatrixXd::Zero(n, b);
    case ModelKind::threshold_ar1:
      break;
  }
  throw Error(ErrorCode::UnsupportedModel, "threshold AR(1) has no moving-average representation");
}

std::size_t ProcessModel::truncation_horizon() const noexcept {
  switch (kind_) {
    case ModelKind::white_noise: return 0;
    case ModelKind::vma: return b_.size() - 1;
    default: break;
  }
  if (rate_ <= 0.0) return 1;
  return static_cast<std::size_t>(std::ceil(std::log(kTruncationTarget) / std::log(rate_)));
}

double ProcessModel::truncation_error_bound() const noexcept {
  switch (kind_) {
    case ModelKind::white_noise:
    case ModelKind::vma: return 0.0;
    default: break;
  }
  if (rate_ <= 0.0) return 0.0;
  return std::pow(rate_, static_cast<double>(truncation_horizon())) / (1.0 - rate_);
}

Eigen::MatrixXd ProcessModel::draw_innovations(std::size_t count, Rng& rng) const {
  const auto b = sigma_.rows();
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd z(static_cast<Eigen::Index>(count), b);
  for (Eigen::Index t = 0; t < z.rows(); ++t) {
    for (Eigen::Index k = 0; k < b; ++k) z(t, k) = normal(rng);
  }
  if (b == 1) return z * chol_(0, 0);
  return z * chol_.transpose();
}

double ProcessModel::scalar_step(double previous, double innovation) const noexcept {
  if (kind_ == ModelKind::threshold_ar1) {
    return tar_pos_ * std::max(previous, 0.0) + tar_neg_ * std::min(previous, 0.0) + innovation;
  }
  return a_(0, 0) * previous + innovation;
}

Eigen::MatrixXd ProcessModel::run(const Eigen::MatrixXd& innovations) const {
  const auto len = innovations.rows();
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd z(len, n);
  switch (kind_) {
    case ModelKind::white_noise:
      return innovations;
    case ModelKind::ar1_scalar:
    case ModelKind::threshold_ar1: {
      double state = 0.0;
      for (Eigen::Index t = 0; t < len; ++t) {
        state = scalar_step(state, innovations(t, 0));
        z(t, 0) = state;
      }
      return z;
    }
    case ModelKind::var1: {
      Eigen::VectorXd state = Eigen::VectorXd::Zero(n);
      for (Eigen::Index t = 0; t < len; ++t) {
        state = (a_ * state + innovations.row(t).transpose()).eval();
        z.row(t) = state.transpose();
      }
      return z;
    }
    case ModelKind::vma: {
      z.setZero();
      for (std::size_t j = 0; j < b_.size(); ++j) {
        const auto lag = static_cast<Eigen::Index>(j);
        if (lag >= len) break;
        z.bottomRows(len - lag) += innovations.topRows(len - lag) * b_[j].transpose();
      }
      return z;
    }
  }
  return z;
}

std::size_t burn_in_length(const ProcessModel& model) {
  return std::max<std::size_t>(1000, model.truncation_horizon());
}

}  // namespace lagspec
