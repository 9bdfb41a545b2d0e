// Gaussian linear regression with a Zellner g-prior on the coefficients
// and known noise variance.
//
// For design X (n x p, full column rank), noise variance sigma^2 and
// shrinkage constant g, the prior beta ~ N(0, g sigma^2 (X^T X)^-1) gives
// the closed-form log marginal likelihood
//
//   log p(y) = -(n/2) log(2 pi sigma^2) + (p/2) log(1 - kappa)
//              - y^T (I - H) y / (2 sigma^2),
//
// where kappa = g/(g+1) and H = kappa P is the shrunken projection onto
// span(X). The matrix-variate response analogue with row covariance Sigma
// (q x q) is implemented alongside.

#pragma once

#include <Eigen/Core>
#include <optional>

namespace bfvar::gprior {

/// kappa = g/(g+1); throws unless g > 0.
double shrinkage(double g);

/// H = kappa P together with its pieces.
struct HatMatrix {
  Eigen::MatrixXd matrix;      // H = kappa * projection
  double kappa = 0.0;
  Eigen::MatrixXd projection;  // P = X (X^T X)^-1 X^T, idempotent
};

/// Exponent convention for the (1-kappa) factor of the matrix-variate
/// marginal. `paper` uses p/2 so that log Bayes factors carry
/// (p1-p2)/2 * log(1-kappa); `pq` uses pq/2, the count of coefficients
/// in the p x q matrix.
enum class MvKappaExponent { paper, pq };

class RegressionModel {
 public:
  /// Univariate response: noise variance sigma2 > 0.
  RegressionModel(Eigen::MatrixXd design, double sigma2, double g);

  /// Matrix-variate response: q x q positive definite row covariance.
  RegressionModel(Eigen::MatrixXd design, Eigen::MatrixXd sigma, double g);

  bool multivariate() const { return sigma_.has_value(); }
  Eigen::Index n() const { return design_.rows(); }
  Eigen::Index p() const { return design_.cols(); }
  Eigen::Index q() const;
  double g() const { return g_; }
  double kappa() const { return kappa_; }
  double sigma2() const;
  const Eigen::MatrixXd& sigma() const;
  const Eigen::MatrixXd& sigma_inverse() const;
  double sigma_log_det() const;
  const Eigen::MatrixXd& design() const { return design_; }

  /// Orthonormal basis of span(X) (thin, n x p).
  const Eigen::MatrixXd& basis() const { return basis_; }

  /// H mu, without materializing H (O(np) work).
  Eigen::VectorXd apply_hat(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd apply_hat(const Eigen::MatrixXd& m) const;

  /// (X^T X)^-1 X^T v, the least-squares coefficient solve.
  Eigen::VectorXd least_squares(const Eigen::VectorXd& v) const;

 private:
  void factorize();

  Eigen::MatrixXd design_;
  double g_;
  double kappa_;
  double sigma2_ = 0.0;                       // univariate noise
  std::optional<Eigen::MatrixXd> sigma_;      // multivariate noise
  Eigen::MatrixXd sigma_inverse_;
  double sigma_log_det_ = 0.0;
  Eigen::MatrixXd basis_;                     // thin orthonormal basis of span(X)
  Eigen::MatrixXd coef_map_;                  // (X^T X)^-1 X^T
};

HatMatrix hat_matrix(const RegressionModel& model);

/// Posterior mean kappa (X^T X)^-1 X^T y.
Eigen::VectorXd posterior_mean(const RegressionModel& model,
                               const Eigen::VectorXd& y);

double log_marginal(const RegressionModel& model, const Eigen::VectorXd& y);

double log_marginal_mv(const RegressionModel& model, const Eigen::MatrixXd& Y,
                       MvKappaExponent exponent = MvKappaExponent::paper);

}  // namespace bfvar::gprior
