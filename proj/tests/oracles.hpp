#pragma once

// Brute-force reference computations shared by the unit tests. They are
// written from the definitions and avoid the library code paths on purpose.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2 == 1) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

// C(u) = (1/T) sum_{t=0}^{T-1-u} Z_t Z_{t+u}', element by element.
inline Eigen::MatrixXd acov(const Eigen::MatrixXd& z, long u) {
  const long t_len = z.rows();
  const long n = z.cols();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  const long lag = std::abs(u);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      double s = 0.0;
      for (long t = 0; t + lag < t_len; ++t) {
        s += u >= 0 ? z(t, i) * z(t + lag, j) : z(t + lag, i) * z(t, j);
      }
      c(i, j) = s / static_cast<double>(t_len);
    }
  }
  return c;
}

// (1/2pi) sum_{|u| <= L} w(u) exp(-i u lambda) M(u).
inline Eigen::MatrixXcd lag_sum(const std::function<Eigen::MatrixXd(long)>& m, const std::function<double(long)>& w,
                                long max_lag, double lambda) {
  const Eigen::MatrixXd m0 = m(0);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m0.rows(), m0.cols());
  for (long u = -max_lag; u <= max_lag; ++u) {
    const std::complex<double> e = std::exp(std::complex<double>(0.0, -static_cast<double>(u) * lambda));
    out += w(u) * e * m(u).cast<std::complex<double>>();
  }
  return out / (2.0 * std::numbers::pi);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0.0) == (f(hi) > 0.0)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// VAR(1) autocovariance Gamma(u) = E Z_0 Z_u' from the MA expansion.
inline Eigen::MatrixXd var1_gamma(const Eigen::MatrixXd& a, const Eigen::MatrixXd& sigma, long u, int terms = 400) {
  const long lag = std::abs(u);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  Eigen::MatrixXd pj = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  std::vector<Eigen::MatrixXd> powers;
  for (int j = 0; j < terms + lag + 1; ++j) {
    powers.push_back(pj);
    pj = pj * a;
  }
  for (int j = 0; j < terms; ++j) g += powers[j] * sigma * powers[j + lag].transpose();
  return u >= 0 ? g : Eigen::MatrixXd(g.transpose());
}

}  // namespace oracle
