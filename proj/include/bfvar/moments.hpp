// Sampling mean and variance of the log Bayes factor between two g-prior
// regression models, taken over datasets drawn from a specified
// data-generating process.
//
// Three closed-form paths are provided:
//   * bf_moments_equal_var - both models share a known scalar noise
//     variance. The variance splits into a model-divergence part,
//     (sigma*^2/sigma^4) ||mu_hat_1 - mu_hat_2||^2, and a non-shared
//     complexity part, (sigma*^4 / 2 sigma^4) ||H_1 - H_2||_F^2.
//   * bf_moments_general - scalar noise variances that may differ, and
//     optionally a full n x n covariance for the data-generating noise.
//     Routed through the Gaussian quadratic-form moments, which makes it
//     an algebraically independent check of the equal-variance formulas.
//   * bf_moments_mv - matrix-variate response with shared row covariance
//     Sigma; the variance ratio generalizes to
//     Omega = Sigma^-1/2 Sigma* Sigma^-1/2.

#pragma once

#include <Eigen/Core>
#include <optional>

#include "bfvar/gprior.hpp"

namespace bfvar::moments {

class DataGeneratingProcess {
 public:
  enum class Noise { isotropic, general, matrix };

  /// y = mu + eps, eps ~ N(0, sigma2_star I_n).
  static DataGeneratingProcess from_mean(Eigen::VectorXd mu,
                                         double sigma2_star);

  /// y = X beta + eps, eps ~ N(0, sigma2_star I_n).
  static DataGeneratingProcess from_design(const Eigen::MatrixXd& x,
                                           const Eigen::VectorXd& beta,
                                           double sigma2_star);

  /// y = mu + eps, eps ~ N(0, sigma_eps) with full n x n covariance.
  static DataGeneratingProcess with_noise_covariance(Eigen::VectorXd mu,
                                                     Eigen::MatrixXd sigma_eps);

  /// Y = mu + E, rows of E iid N(0, sigma_star), mu n x q.
  static DataGeneratingProcess matrix_variate(Eigen::MatrixXd mu,
                                              Eigen::MatrixXd sigma_star);

  /// Y = X B + E as above.
  static DataGeneratingProcess matrix_variate_from_design(
      const Eigen::MatrixXd& x, const Eigen::MatrixXd& coefficients,
      Eigen::MatrixXd sigma_star);

  Noise noise() const { return noise_; }
  Eigen::Index n() const;
  Eigen::Index q() const;

  const Eigen::VectorXd& mean() const;         // isotropic/general noise
  const Eigen::MatrixXd& mean_matrix() const;  // matrix noise
  double sigma2_star() const;
  const Eigen::MatrixXd& sigma_eps() const;
  const Eigen::MatrixXd& sigma_star() const;

  /// Lower Cholesky factor of the noise covariance (general and matrix
  /// kinds); used by the simulator.
  const Eigen::MatrixXd& noise_cholesky() const;

 private:
  DataGeneratingProcess() = default;

  Noise noise_ = Noise::isotropic;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd mean_matrix_;
  double sigma2_star_ = 0.0;
  Eigen::MatrixXd noise_cov_;   // sigma_eps (n x n) or sigma_star (q x q)
  Eigen::MatrixXd noise_chol_;
};

/// Closed-form moments of log B12 with the named summands.
/// mean = kl_difference_term + complexity_penalty_term and
/// variance = divergence_term + nonshared_dof_term on every path.
struct BfMoments {
  double mean = 0.0;
  double variance = 0.0;
  double kl_difference_term = 0.0;        // (KL2 - KL1) / (2 - kappa)
  double complexity_penalty_term = 0.0;   // mean - kl_difference_term
  double divergence_term = 0.0;           // mu*-dependent variance summand
  double nonshared_dof_term = 0.0;        // trace variance summand
};

/// log B12(y) = log p(y|M1) - log p(y|M2). Both models univariate.
double log_bf(const gprior::RegressionModel& m1,
              const gprior::RegressionModel& m2, const Eigen::VectorXd& y);

/// Matrix-variate responses.
double log_bf(const gprior::RegressionModel& m1,
              const gprior::RegressionModel& m2, const Eigen::MatrixXd& y,
              gprior::MvKappaExponent exponent = gprior::MvKappaExponent::paper);

/// mu_hat_i = H_i mu*, the model's best (KL-minimizing) approximation of
/// the true mean, shrunk by kappa.
Eigen::VectorXd projected_mean(const gprior::RegressionModel& model,
                               const DataGeneratingProcess& dgp);
Eigen::MatrixXd projected_mean_mv(const gprior::RegressionModel& model,
                                  const DataGeneratingProcess& dgp);

/// KL(M* || M_i) with the model at its projected mean.
double kl_dgp_to_model(const gprior::RegressionModel& model,
                       const DataGeneratingProcess& dgp);

/// KL between the two best-approximating densities,
/// ||mu_hat_1 - mu_hat_2||^2 / (2 sigma^2). Requires sigma_1 = sigma_2.
double kl_between_models(const gprior::RegressionModel& m1,
                         const gprior::RegressionModel& m2,
                         const DataGeneratingProcess& dgp);

/// Triangle-inequality bound on the squared divergence between projected
/// means: ||mu_hat_1 - mu_hat_2||^2 <= (||mu*-mu_hat_1|| + ||mu*-mu_hat_2||)^2,
/// which equals 4 ||mu*-mu_hat_i||^2 under equal degrees of misspecification.
struct DivergenceBound {
  double bound = 0.0;
  bool holds = false;
};
DivergenceBound divergence_bound(const gprior::RegressionModel& m1,
                                 const gprior::RegressionModel& m2,
                                 const DataGeneratingProcess& dgp);

BfMoments bf_moments_equal_var(const gprior::RegressionModel& m1,
                               const gprior::RegressionModel& m2,
                               const DataGeneratingProcess& dgp);

BfMoments bf_moments_general(const gprior::RegressionModel& m1,
                             const gprior::RegressionModel& m2,
                             const DataGeneratingProcess& dgp);

BfMoments bf_moments_mv(const gprior::RegressionModel& m1,
                        const gprior::RegressionModel& m2,
                        const DataGeneratingProcess& dgp);

/// Omega = Sigma^-1/2 Sigma* Sigma^-1/2 with symmetric square roots;
/// its eigenvalues are the generalized eigenvalues of (Sigma*, Sigma).
Eigen::MatrixXd omega(const gprior::RegressionModel& model,
                      const DataGeneratingProcess& dgp);

/// Splits the divergence variance term of the matrix-variate path by
/// principal-component direction. `alignment` has entries
/// sqrt(lambda*_j / lambda_i) cos(phi_ij) where phi_ij is the angle
/// between eigenvector i of Sigma and eigenvector j of Sigma*;
/// `per_direction_contributions` sums to
/// ||(mu_hat_2 - mu_hat_1) Sigma^-1/2 Omega^1/2||_F^2.
struct AlignmentDecomposition {
  Eigen::MatrixXd alignment;
  Eigen::MatrixXd per_direction_contributions;
};
AlignmentDecomposition alignment_decomposition(
    const gprior::RegressionModel& m1, const gprior::RegressionModel& m2,
    const DataGeneratingProcess& dgp);

}  // namespace bfvar::moments
