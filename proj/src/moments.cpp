#include "bfvar/moments.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "bfvar/quadform.hpp"

namespace bfvar::moments {

namespace {

void check_positive_definite(const Eigen::MatrixXd& s, const char* what,
                             Eigen::MatrixXd* chol_out) {
  if (s.rows() != s.cols())
    throw std::invalid_argument(std::string(what) + ": covariance not square");
  if ((s - s.transpose()).norm() > 1e-8 * std::max(s.norm(), 1e-300))
    throw std::invalid_argument(std::string(what) +
                                ": covariance not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument(std::string(what) +
                                ": covariance not positive definite");
  if (chol_out) *chol_out = llt.matrixL();
}

void check_full_rank(const Eigen::MatrixXd& x, const char* what) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
  const auto& sv = svd.singularValues();
  if (x.rows() < x.cols() || sv(sv.size() - 1) <= 1e-10 * sv(0))
    throw std::invalid_argument(std::string(what) + ": design rank deficient");
}

// Symmetric eigendecomposition with positive-definiteness enforced via an
// eigenvalue floor of 1e-12 * lambda_max.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pd_eigen(
    const Eigen::MatrixXd& s, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.info() != Eigen::Success)
    throw std::runtime_error(std::string(what) + ": eigendecomposition failed");
  const double largest = es.eigenvalues().maxCoeff();
  if (largest <= 0.0 || es.eigenvalues().minCoeff() < 1e-12 * largest)
    throw std::invalid_argument(std::string(what) +
                                ": matrix not positive definite");
  return es;
}

Eigen::MatrixXd sym_inv_sqrt(const Eigen::MatrixXd& s, const char* what) {
  auto es = pd_eigen(s, what);
  return es.eigenvectors() *
         es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

Eigen::MatrixXd sym_sqrt(const Eigen::MatrixXd& s, const char* what) {
  auto es = pd_eigen(s, what);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

void check_univariate_pair(const gprior::RegressionModel& m1,
                           const gprior::RegressionModel& m2,
                           const DataGeneratingProcess& dgp) {
  if (m1.multivariate() || m2.multivariate())
    throw std::invalid_argument("moments: expected univariate models");
  if (dgp.noise() == DataGeneratingProcess::Noise::matrix)
    throw std::invalid_argument("moments: expected a univariate process");
  if (m1.n() != m2.n() || m1.n() != dgp.n())
    throw std::invalid_argument("moments: sample size mismatch");
}

// The moment formulas carry a single kappa.
void require_shared_g(const gprior::RegressionModel& m1,
                      const gprior::RegressionModel& m2) {
  if (m1.g() != m2.g())
    throw std::invalid_argument(
        "moments: compared models must share the shrinkage constant g");
}

bool same_scalar_variance(const gprior::RegressionModel& m1,
                          const gprior::RegressionModel& m2) {
  const double a = m1.sigma2();
  const double b = m2.sigma2();
  return std::abs(a - b) <= 1e-12 * std::max(a, b);
}

// ||H1 - H2||_F^2. Materialized difference rather than the cheaper trace
// identity kappa^2 (p1 + p2 - 2 tr(P1 P2)): the subtraction gives an exact
// zero for identical models, which the cancelling traces do not.
double hat_diff_frob2(const gprior::RegressionModel& m1,
                      const gprior::RegressionModel& m2) {
  return (gprior::hat_matrix(m1).matrix - gprior::hat_matrix(m2).matrix)
      .squaredNorm();
}

}  // namespace

DataGeneratingProcess DataGeneratingProcess::from_mean(Eigen::VectorXd mu,
                                                       double sigma2_star) {
  if (mu.size() == 0)
    throw std::invalid_argument("DataGeneratingProcess: empty mean");
  if (!(sigma2_star > 0.0))
    throw std::invalid_argument(
        "DataGeneratingProcess: noise variance must be positive");
  DataGeneratingProcess d;
  d.noise_ = Noise::isotropic;
  d.mean_ = std::move(mu);
  d.sigma2_star_ = sigma2_star;
  return d;
}

DataGeneratingProcess DataGeneratingProcess::from_design(
    const Eigen::MatrixXd& x, const Eigen::VectorXd& beta,
    double sigma2_star) {
  check_full_rank(x, "DataGeneratingProcess");
  if (x.cols() != beta.size())
    throw std::invalid_argument(
        "DataGeneratingProcess: design/coefficient dimension mismatch");
  return from_mean(x * beta, sigma2_star);
}

DataGeneratingProcess DataGeneratingProcess::with_noise_covariance(
    Eigen::VectorXd mu, Eigen::MatrixXd sigma_eps) {
  if (sigma_eps.rows() != mu.size())
    throw std::invalid_argument(
        "DataGeneratingProcess: mean/covariance dimension mismatch");
  DataGeneratingProcess d;
  check_positive_definite(sigma_eps, "DataGeneratingProcess", &d.noise_chol_);
  d.noise_ = Noise::general;
  d.mean_ = std::move(mu);
  d.noise_cov_ = std::move(sigma_eps);
  return d;
}

DataGeneratingProcess DataGeneratingProcess::matrix_variate(
    Eigen::MatrixXd mu, Eigen::MatrixXd sigma_star) {
  if (sigma_star.rows() != mu.cols())
    throw std::invalid_argument(
        "DataGeneratingProcess: mean/covariance dimension mismatch");
  DataGeneratingProcess d;
  check_positive_definite(sigma_star, "DataGeneratingProcess", &d.noise_chol_);
  d.noise_ = Noise::matrix;
  d.mean_matrix_ = std::move(mu);
  d.noise_cov_ = std::move(sigma_star);
  return d;
}

DataGeneratingProcess DataGeneratingProcess::matrix_variate_from_design(
    const Eigen::MatrixXd& x, const Eigen::MatrixXd& coefficients,
    Eigen::MatrixXd sigma_star) {
  check_full_rank(x, "DataGeneratingProcess");
  if (x.cols() != coefficients.rows())
    throw std::invalid_argument(
        "DataGeneratingProcess: design/coefficient dimension mismatch");
  return matrix_variate(x * coefficients, std::move(sigma_star));
}

Eigen::Index DataGeneratingProcess::n() const {
  return noise_ == Noise::matrix ? mean_matrix_.rows() : mean_.size();
}

Eigen::Index DataGeneratingProcess::q() const {
  return noise_ == Noise::matrix ? mean_matrix_.cols() : 1;
}

const Eigen::VectorXd& DataGeneratingProcess::mean() const {
  if (noise_ == Noise::matrix)
    throw std::invalid_argument(
        "DataGeneratingProcess: vector mean requested from matrix process");
  return mean_;
}

const Eigen::MatrixXd& DataGeneratingProcess::mean_matrix() const {
  if (noise_ != Noise::matrix)
    throw std::invalid_argument(
        "DataGeneratingProcess: matrix mean requested from vector process");
  return mean_matrix_;
}

double DataGeneratingProcess::sigma2_star() const {
  if (noise_ != Noise::isotropic)
    throw std::invalid_argument(
        "DataGeneratingProcess: scalar variance only defined for isotropic "
        "noise");
  return sigma2_star_;
}

const Eigen::MatrixXd& DataGeneratingProcess::sigma_eps() const {
  if (noise_ != Noise::general)
    throw std::invalid_argument(
        "DataGeneratingProcess: no general noise covariance");
  return noise_cov_;
}

const Eigen::MatrixXd& DataGeneratingProcess::sigma_star() const {
  if (noise_ != Noise::matrix)
    throw std::invalid_argument(
        "DataGeneratingProcess: no matrix-variate noise covariance");
  return noise_cov_;
}

const Eigen::MatrixXd& DataGeneratingProcess::noise_cholesky() const {
  if (noise_ == Noise::isotropic)
    throw std::invalid_argument(
        "DataGeneratingProcess: isotropic noise has no stored factor");
  return noise_chol_;
}

double log_bf(const gprior::RegressionModel& m1,
              const gprior::RegressionModel& m2, const Eigen::VectorXd& y) {
  if (m1.multivariate() || m2.multivariate())
    throw std::invalid_argument("log_bf: mixed or non-univariate model kinds");
  if (m1.n() != m2.n())
    throw std::invalid_argument("log_bf: sample size mismatch");
  return gprior::log_marginal(m1, y) - gprior::log_marginal(m2, y);
}

double log_bf(const gprior::RegressionModel& m1,
              const gprior::RegressionModel& m2, const Eigen::MatrixXd& y,
              gprior::MvKappaExponent exponent) {
  if (!m1.multivariate() || !m2.multivariate())
    throw std::invalid_argument("log_bf: mixed or non-multivariate model kinds");
  if (m1.n() != m2.n() || m1.q() != m2.q())
    throw std::invalid_argument("log_bf: dimension mismatch");
  return gprior::log_marginal_mv(m1, y, exponent) -
         gprior::log_marginal_mv(m2, y, exponent);
}

Eigen::VectorXd projected_mean(const gprior::RegressionModel& model,
                               const DataGeneratingProcess& dgp) {
  return model.apply_hat(dgp.mean());
}

Eigen::MatrixXd projected_mean_mv(const gprior::RegressionModel& model,
                                  const DataGeneratingProcess& dgp) {
  return model.apply_hat(dgp.mean_matrix());
}

double kl_dgp_to_model(const gprior::RegressionModel& model,
                       const DataGeneratingProcess& dgp) {
  const double n = static_cast<double>(model.n());
  if (dgp.noise() == DataGeneratingProcess::Noise::matrix) {
    if (!model.multivariate())
      throw std::invalid_argument(
          "kl_dgp_to_model: univariate model with matrix-variate process");
    if (model.n() != dgp.n() || model.q() != dgp.q())
      throw std::invalid_argument("kl_dgp_to_model: dimension mismatch");
    const double nq = n * static_cast<double>(model.q());
    const Eigen::MatrixXd diff =
        dgp.mean_matrix() - projected_mean_mv(model, dgp);
    const double star_log_det =
        2.0 * Eigen::LLT<Eigen::MatrixXd>(dgp.sigma_star())
                  .matrixL()
                  .toDenseMatrix()
                  .diagonal()
                  .array()
                  .log()
                  .sum();
    const double mahalanobis =
        (diff.transpose() * diff * model.sigma_inverse()).trace();
    return 0.5 * (-n * (star_log_det - model.sigma_log_det()) - nq +
                  n * (model.sigma_inverse() * dgp.sigma_star()).trace() +
                  mahalanobis);
  }
  if (model.multivariate())
    throw std::invalid_argument(
        "kl_dgp_to_model: multivariate model with univariate process");
  if (model.n() != dgp.n())
    throw std::invalid_argument("kl_dgp_to_model: dimension mismatch");
  const double s2 = model.sigma2();
  const double resid_norm2 =
      (dgp.mean() - projected_mean(model, dgp)).squaredNorm();
  if (dgp.noise() == DataGeneratingProcess::Noise::isotropic) {
    const double ratio = dgp.sigma2_star() / s2;
    return -0.5 * n * std::log(ratio) + 0.5 * n * ratio +
           0.5 * resid_norm2 / s2 - 0.5 * n;
  }
  // General N(mu*, Sigma_eps) source against the model's N(mu_hat, s2 I).
  const double eps_log_det =
      2.0 * Eigen::LLT<Eigen::MatrixXd>(dgp.sigma_eps())
                .matrixL()
                .toDenseMatrix()
                .diagonal()
                .array()
                .log()
                .sum();
  return 0.5 * (n * std::log(s2) - eps_log_det - n +
                dgp.sigma_eps().trace() / s2 + resid_norm2 / s2);
}

double kl_between_models(const gprior::RegressionModel& m1,
                         const gprior::RegressionModel& m2,
                         const DataGeneratingProcess& dgp) {
  check_univariate_pair(m1, m2, dgp);
  if (!same_scalar_variance(m1, m2))
    throw std::invalid_argument(
        "kl_between_models: model noise variances must be equal");
  const double diff2 =
      (projected_mean(m1, dgp) - projected_mean(m2, dgp)).squaredNorm();
  return diff2 / (2.0 * m1.sigma2());
}

DivergenceBound divergence_bound(const gprior::RegressionModel& m1,
                                 const gprior::RegressionModel& m2,
                                 const DataGeneratingProcess& dgp) {
  check_univariate_pair(m1, m2, dgp);
  const Eigen::VectorXd mu1 = projected_mean(m1, dgp);
  const Eigen::VectorXd mu2 = projected_mean(m2, dgp);
  const double a = (dgp.mean() - mu1).norm();
  const double b = (dgp.mean() - mu2).norm();
  DivergenceBound out;
  out.bound = (a + b) * (a + b);
  out.holds = (mu1 - mu2).squaredNorm() <= out.bound * (1.0 + 1e-12) + 1e-300;
  return out;
}

BfMoments bf_moments_equal_var(const gprior::RegressionModel& m1,
                               const gprior::RegressionModel& m2,
                               const DataGeneratingProcess& dgp) {
  check_univariate_pair(m1, m2, dgp);
  require_shared_g(m1, m2);
  if (dgp.noise() != DataGeneratingProcess::Noise::isotropic)
    throw std::invalid_argument(
        "bf_moments_equal_var: requires isotropic process noise; use "
        "bf_moments_general");
  if (!same_scalar_variance(m1, m2))
    throw std::invalid_argument(
        "bf_moments_equal_var: model variances differ; use bf_moments_general");
  const double kappa = m1.kappa();
  const double s2 = m1.sigma2();
  const double variance_ratio = dgp.sigma2_star() / s2;
  const double p1 = static_cast<double>(m1.p());
  const double p2 = static_cast<double>(m2.p());

  BfMoments out;
  const double kl1 = kl_dgp_to_model(m1, dgp);
  const double kl2 = kl_dgp_to_model(m2, dgp);
  out.kl_difference_term = (kl2 - kl1) / (2.0 - kappa);
  out.complexity_penalty_term =
      0.5 * (p1 - p2) * (std::log1p(-kappa) + kappa * variance_ratio);
  out.mean = out.kl_difference_term + out.complexity_penalty_term;

  const double mu_diff2 =
      (projected_mean(m1, dgp) - projected_mean(m2, dgp)).squaredNorm();
  out.divergence_term = variance_ratio * (mu_diff2 / s2);
  out.nonshared_dof_term =
      0.5 * variance_ratio * variance_ratio * hat_diff_frob2(m1, m2);
  out.variance = out.divergence_term + out.nonshared_dof_term;
  return out;
}

BfMoments bf_moments_general(const gprior::RegressionModel& m1,
                             const gprior::RegressionModel& m2,
                             const DataGeneratingProcess& dgp) {
  check_univariate_pair(m1, m2, dgp);
  require_shared_g(m1, m2);
  const Eigen::Index n = m1.n();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const quadform::QuadForm a1(
      (identity - hat_matrix(m1).matrix) / (2.0 * m1.sigma2()));
  const quadform::QuadForm a2(
      (identity - hat_matrix(m2).matrix) / (2.0 * m2.sigma2()));
  const Eigen::MatrixXd noise_cov =
      dgp.noise() == DataGeneratingProcess::Noise::isotropic
          ? Eigen::MatrixXd(dgp.sigma2_star() * identity)
          : dgp.sigma_eps();
  const quadform::GaussianSpec source(dgp.mean(), noise_cov);

  BfMoments out;
  out.mean = 0.5 * static_cast<double>(n) *
                 std::log(m2.sigma2() / m1.sigma2()) +
             0.5 * static_cast<double>(m1.p() - m2.p()) *
                 std::log1p(-m1.kappa()) +
             quadform::quad_mean(a2, source) - quadform::quad_mean(a1, source);
  out.variance = quadform::quad_var(a2, source) +
                 quadform::quad_var(a1, source) -
                 2.0 * quadform::quad_cov(a2, a1, source);

  // Split the variance of y^T (A2 - A1) y into its trace part (complexity
  // not shared between the models) and its mean part (divergence between
  // the projected means).
  const quadform::QuadForm delta(a2.matrix() - a1.matrix());
  const quadform::GaussianSpec centered(Eigen::VectorXd::Zero(n), noise_cov);
  out.nonshared_dof_term = quadform::quad_var(delta, centered);
  out.divergence_term =
      std::max(0.0, out.variance - out.nonshared_dof_term);

  const double kl1 = kl_dgp_to_model(m1, dgp);
  const double kl2 = kl_dgp_to_model(m2, dgp);
  out.kl_difference_term = (kl2 - kl1) / (2.0 - m1.kappa());
  out.complexity_penalty_term = out.mean - out.kl_difference_term;
  return out;
}

BfMoments bf_moments_mv(const gprior::RegressionModel& m1,
                        const gprior::RegressionModel& m2,
                        const DataGeneratingProcess& dgp) {
  if (!m1.multivariate() || !m2.multivariate())
    throw std::invalid_argument("bf_moments_mv: expected multivariate models");
  if (dgp.noise() != DataGeneratingProcess::Noise::matrix)
    throw std::invalid_argument(
        "bf_moments_mv: expected a matrix-variate process");
  if (m1.n() != m2.n() || m1.n() != dgp.n() || m1.q() != m2.q() ||
      m1.q() != dgp.q())
    throw std::invalid_argument("bf_moments_mv: dimension mismatch");
  require_shared_g(m1, m2);
  if ((m1.sigma() - m2.sigma()).norm() > 1e-12 * m1.sigma().norm())
    throw std::invalid_argument(
        "bf_moments_mv: model noise covariances must be equal");

  const double kappa = m1.kappa();
  const double p1 = static_cast<double>(m1.p());
  const double p2 = static_cast<double>(m2.p());
  const Eigen::MatrixXd om = omega(m1, dgp);

  BfMoments out;
  const double kl1 = kl_dgp_to_model(m1, dgp);
  const double kl2 = kl_dgp_to_model(m2, dgp);
  out.kl_difference_term = (kl2 - kl1) / (2.0 - kappa);
  out.complexity_penalty_term =
      0.5 * (p1 - p2) *
      (std::log1p(-kappa) +
       kappa * (m1.sigma_inverse() * dgp.sigma_star()).trace());
  out.mean = out.kl_difference_term + out.complexity_penalty_term;

  out.nonshared_dof_term =
      0.5 * (om * om).trace() * hat_diff_frob2(m1, m2);
  const Eigen::MatrixXd mu_diff =
      projected_mean_mv(m2, dgp) - projected_mean_mv(m1, dgp);
  const Eigen::MatrixXd root =
      sym_inv_sqrt(m1.sigma(), "bf_moments_mv") * sym_sqrt(om, "bf_moments_mv");
  out.divergence_term = (mu_diff * root).squaredNorm();
  out.variance = out.divergence_term + out.nonshared_dof_term;
  return out;
}

Eigen::MatrixXd omega(const gprior::RegressionModel& model,
                      const DataGeneratingProcess& dgp) {
  if (!model.multivariate() ||
      dgp.noise() != DataGeneratingProcess::Noise::matrix)
    throw std::invalid_argument("omega: multivariate inputs required");
  if (model.q() != dgp.q())
    throw std::invalid_argument("omega: dimension mismatch");
  const Eigen::MatrixXd root = sym_inv_sqrt(model.sigma(), "omega");
  pd_eigen(dgp.sigma_star(), "omega");  // reject non-PD process covariance
  return root * dgp.sigma_star() * root;
}

namespace {

// Eigendecomposition sorted by descending eigenvalue with a deterministic
// sign convention (largest-magnitude entry of each eigenvector positive).
void sorted_spectral(const Eigen::MatrixXd& s, const char* what,
                     Eigen::MatrixXd* vectors, Eigen::VectorXd* values) {
  auto es = pd_eigen(s, what);
  const Eigen::Index q = s.rows();
  *vectors = Eigen::MatrixXd(q, q);
  *values = Eigen::VectorXd(q);
  for (Eigen::Index j = 0; j < q; ++j) {
    // SelfAdjointEigenSolver sorts ascending; reverse.
    const Eigen::Index src = q - 1 - j;
    Eigen::VectorXd v = es.eigenvectors().col(src);
    Eigen::Index max_row = 0;
    v.cwiseAbs().maxCoeff(&max_row);
    if (v(max_row) < 0.0) v = -v;
    vectors->col(j) = v;
    (*values)(j) = es.eigenvalues()(src);
  }
}

}  // namespace

AlignmentDecomposition alignment_decomposition(
    const gprior::RegressionModel& m1, const gprior::RegressionModel& m2,
    const DataGeneratingProcess& dgp) {
  if (!m1.multivariate() || !m2.multivariate() ||
      dgp.noise() != DataGeneratingProcess::Noise::matrix)
    throw std::invalid_argument(
        "alignment_decomposition: multivariate inputs required");
  Eigen::MatrixXd u, u_star;
  Eigen::VectorXd lambda, lambda_star;
  sorted_spectral(m1.sigma(), "alignment_decomposition", &u, &lambda);
  sorted_spectral(dgp.sigma_star(), "alignment_decomposition", &u_star,
                  &lambda_star);

  AlignmentDecomposition out;
  out.alignment = lambda.cwiseInverse().cwiseSqrt().asDiagonal() *
                  (u.transpose() * u_star) *
                  lambda_star.cwiseSqrt().asDiagonal();

  // Prediction differences along the principal components of Sigma,
  // rescaled to unit variance.
  const Eigen::MatrixXd mu_diff =
      projected_mean_mv(m2, dgp) - projected_mean_mv(m1, dgp);
  const Eigen::MatrixXd rescaled =
      mu_diff * u * lambda.cwiseInverse().cwiseSqrt().asDiagonal();
  // ||rescaled * alignment||_F^2 = sum_ij gram_ij (alignment alignment^T)_ij
  const Eigen::MatrixXd gram = rescaled.transpose() * rescaled;
  const Eigen::MatrixXd cross = out.alignment * out.alignment.transpose();
  out.per_direction_contributions = gram.cwiseProduct(cross);
  return out;
}

}  // namespace bfvar::moments
