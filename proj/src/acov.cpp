#include "lagspec/acov.hpp"

#include "lagspec/error.hpp"

#include <string>

namespace lagspec {

AutocovSequence::AutocovSequence(std::vector<Eigen::MatrixXd> nonnegative, std::size_t t_len)
    : lags_(std::move(nonnegative)), t_len_(t_len) {
  if (lags_.empty()) throw Error(ErrorCode::InvalidArgument, "autocovariance sequence needs lag 0");
  if (lags_.size() > t_len_) {
    throw Error(ErrorCode::LagOutOfRange, "max lag must be below T");
  }
}

Eigen::MatrixXd AutocovSequence::at(long u) const {
  const auto au = static_cast<std::size_t>(u < 0 ? -u : u);
  if (au >= lags_.size()) {
    throw Error(ErrorCode::LagOutOfRange,
                "lag " + std::to_string(u) + " beyond max lag " + std::to_string(max_lag()));
  }
  if (u < 0) return lags_[au].transpose();
  return lags_[au];
}

AutocovSequence sample_autocov(const MultivariateSeries& series, std::size_t max_lag) {
  const std::size_t t_len = series.t_len();
  if (max_lag >= t_len) {
    throw Error(ErrorCode::LagOutOfRange, "max lag " + std::to_string(max_lag) +
                                              " must be below T = " + std::to_string(t_len));
  }
  const auto& x = series.values();
  const double inv_t = 1.0 / static_cast<double>(t_len);
  std::vector<Eigen::MatrixXd> lags;
  lags.reserve(max_lag + 1);
  const auto rows = static_cast<Eigen::Index>(t_len);
  for (std::size_t u = 0; u <= max_lag; ++u) {
    const auto span = rows - static_cast<Eigen::Index>(u);
    if (x.cols() == 1) {
      // Scalar path: a plain dot product keeps the summation order fixed.
      const double s = x.col(0).head(span).dot(x.col(0).tail(span));
      lags.emplace_back(Eigen::MatrixXd::Constant(1, 1, s * inv_t));
    } else {
      lags.emplace_back((x.topRows(span).transpose() * x.bottomRows(span)) * inv_t);
    }
  }
  return AutocovSequence(std::move(lags), t_len);
}

Eigen::MatrixXd expected_autocov(const ProcessModel& model, long u, std::size_t t_len) {
  if (!model.has_closed_form()) {
    throw Error(ErrorCode::UnsupportedModel,
                std::string(model.kind_name()) + " has no closed-form autocovariance");
  }
  const long t = static_cast<long>(t_len);
  const long au = u < 0 ? -u : u;
  if (au >= t) return Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(model.n_dim()),
                                            static_cast<Eigen::Index>(model.n_dim()));
  return (static_cast<double>(t - au) / static_cast<double>(t)) * model.autocov(u);
}

}  // namespace lagspec
