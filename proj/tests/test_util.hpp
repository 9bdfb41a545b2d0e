// Shared helpers for the test suites: seeded random problem generators,
// tolerance comparisons, and small statistical utilities used by the
// Monte Carlo checks.

#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "bfvar/rng.hpp"

namespace testutil {

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  const double scale = std::max({std::abs(a), std::abs(b), abs_floor});
  return std::abs(a - b) <= rel * scale + 1e-300;
}

inline Eigen::VectorXd random_vector(bfvar::rng::Stream& s, Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = s.next_gaussian();
  return v;
}

inline Eigen::MatrixXd random_matrix(bfvar::rng::Stream& s, Eigen::Index rows,
                                     Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = s.next_gaussian();
  return m;
}

inline Eigen::MatrixXd random_symmetric(bfvar::rng::Stream& s,
                                        Eigen::Index n) {
  const Eigen::MatrixXd a = random_matrix(s, n, n);
  return 0.5 * (a + a.transpose());
}

/// Random symmetric positive definite matrix L L^T + eps I.
inline Eigen::MatrixXd random_spd(bfvar::rng::Stream& s, Eigen::Index n,
                                  double ridge = 0.5) {
  const Eigen::MatrixXd l = random_matrix(s, n, n);
  return l * l.transpose() + ridge * Eigen::MatrixXd::Identity(n, n);
}

struct MomentStats {
  double mean = 0.0;
  double var = 0.0;
  double se_mean = 0.0;
  double se_var = 0.0;
};

/// Sample mean/variance with standard errors (variance se through the
/// fourth central moment).
inline MomentStats moment_stats(const std::vector<double>& v) {
  const double m = static_cast<double>(v.size());
  MomentStats out;
  double sum = 0.0;
  for (double x : v) sum += x;
  out.mean = sum / m;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : v) {
    const double d = x - out.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  out.var = m2 / (m - 1.0);
  const double fourth = m4 / m;
  out.se_mean = std::sqrt(out.var / m);
  const double var_of_var =
      (fourth - out.var * out.var * (m - 3.0) / (m - 1.0)) / m;
  out.se_var = var_of_var > 0.0 ? std::sqrt(var_of_var) : 0.0;
  return out;
}

/// Sample covariance of paired draws with its standard error.
struct CovStats {
  double cov = 0.0;
  double se = 0.0;
};

inline CovStats cov_stats(const std::vector<double>& u,
                          const std::vector<double>& v) {
  const double m = static_cast<double>(u.size());
  double mu = 0.0;
  double mv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= m;
  mv /= m;
  double c = 0.0;
  double m22 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double du = u[i] - mu;
    const double dv = v[i] - mv;
    c += du * dv;
    m22 += du * du * dv * dv;
  }
  CovStats out;
  out.cov = c / (m - 1.0);
  const double var_of_cov = (m22 / m - out.cov * out.cov) / m;
  out.se = var_of_cov > 0.0 ? std::sqrt(var_of_cov) : 0.0;
  return out;
}

/// Upper tail of the chi-square distribution via the regularized upper
/// incomplete gamma function (series and continued-fraction expansions).
double chi_square_upper_tail(double x, double dof);

}  // namespace testutil
