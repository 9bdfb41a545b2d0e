// Exact moments of quadratic forms y^T A y for Gaussian y.
//
// For y ~ N(mu, Sigma) and symmetric A1, A2:
//   E(y^T A1 y)              = mu^T A1 mu + tr(A1 Sigma)
//   Var(y^T A1 y)            = 2 tr((A1 Sigma)^2) + 4 mu^T A1 Sigma A1 mu
//   Cov(y^T A1 y, y^T A2 y)  = 2 tr(A1 Sigma A2 Sigma) + 4 mu^T A1 Sigma A2 mu

#pragma once

#include <Eigen/Core>

namespace bfvar::quadform {

/// A Gaussian distribution N(mean, covariance). The covariance must be
/// symmetric (relative asymmetry below 1e-8; stored exactly symmetrized)
/// and positive semi-definite up to an eigenvalue floor of -1e-10 times
/// the largest eigenvalue.
class GaussianSpec {
 public:
  GaussianSpec(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }
  Eigen::Index dim() const { return mean_.size(); }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
};

/// The matrix of a quadratic form y^T A y. Inputs with relative asymmetry
/// above 1e-8 are rejected (that level of asymmetry signals a caller bug);
/// below it, the matrix is stored as (A + A^T)/2 since the form only
/// depends on the symmetric part.
class QuadForm {
 public:
  explicit QuadForm(Eigen::MatrixXd matrix);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  Eigen::MatrixXd matrix_;
};

double quad_mean(const QuadForm& a, const GaussianSpec& g);
double quad_cov(const QuadForm& a1, const QuadForm& a2, const GaussianSpec& g);
double quad_var(const QuadForm& a, const GaussianSpec& g);

}  // namespace bfvar::quadform
