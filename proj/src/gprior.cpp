#include "bfvar/gprior.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "bfvar/kernels.hpp"

namespace bfvar::gprior {

double shrinkage(double g) {
  if (!(g > 0.0)) throw std::invalid_argument("shrinkage: g must be positive");
  return g / (g + 1.0);
}

RegressionModel::RegressionModel(Eigen::MatrixXd design, double sigma2,
                                 double g)
    : design_(std::move(design)), g_(g), kappa_(shrinkage(g)),
      sigma2_(sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument(
        "RegressionModel: noise variance must be positive");
  factorize();
}

RegressionModel::RegressionModel(Eigen::MatrixXd design, Eigen::MatrixXd sigma,
                                 double g)
    : design_(std::move(design)), g_(g), kappa_(shrinkage(g)),
      sigma_(std::move(sigma)) {
  const Eigen::MatrixXd& s = *sigma_;
  if (s.rows() != s.cols())
    throw std::invalid_argument("RegressionModel: noise covariance not square");
  if ((s - s.transpose()).norm() > 1e-8 * std::max(s.norm(), 1e-300))
    throw std::invalid_argument(
        "RegressionModel: noise covariance not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument(
        "RegressionModel: noise covariance not positive definite");
  sigma_inverse_ = llt.solve(Eigen::MatrixXd::Identity(s.rows(), s.rows()));
  sigma_log_det_ =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  factorize();
}

void RegressionModel::factorize() {
  if (design_.rows() == 0 || design_.cols() == 0)
    throw std::invalid_argument("RegressionModel: empty design matrix");
  if (design_.rows() < design_.cols())
    throw std::invalid_argument(
        "RegressionModel: more columns than rows in design");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      design_, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * sv(0))
    throw std::invalid_argument("RegressionModel: design matrix rank deficient");
  basis_ = svd.matrixU();
  coef_map_ = svd.matrixV() * sv.cwiseInverse().asDiagonal() *
              svd.matrixU().transpose();
}

Eigen::Index RegressionModel::q() const { return multivariate() ? sigma_->rows() : 1; }

double RegressionModel::sigma2() const {
  if (multivariate())
    throw std::invalid_argument(
        "RegressionModel: scalar variance requested from multivariate model");
  return sigma2_;
}

const Eigen::MatrixXd& RegressionModel::sigma() const {
  if (!multivariate())
    throw std::invalid_argument(
        "RegressionModel: covariance requested from univariate model");
  return *sigma_;
}

const Eigen::MatrixXd& RegressionModel::sigma_inverse() const {
  if (!multivariate())
    throw std::invalid_argument(
        "RegressionModel: covariance requested from univariate model");
  return sigma_inverse_;
}

double RegressionModel::sigma_log_det() const {
  if (!multivariate())
    throw std::invalid_argument(
        "RegressionModel: covariance requested from univariate model");
  return sigma_log_det_;
}

Eigen::VectorXd RegressionModel::apply_hat(const Eigen::VectorXd& v) const {
  if (v.size() != n())
    throw std::invalid_argument("apply_hat: dimension mismatch");
  return kappa_ * (basis_ * (basis_.transpose() * v));
}

Eigen::MatrixXd RegressionModel::apply_hat(const Eigen::MatrixXd& m) const {
  if (m.rows() != n())
    throw std::invalid_argument("apply_hat: dimension mismatch");
  return kappa_ * (basis_ * (basis_.transpose() * m));
}

HatMatrix hat_matrix(const RegressionModel& model) {
  HatMatrix h;
  h.kappa = model.kappa();
  h.projection = model.basis() * model.basis().transpose();
  h.matrix = h.kappa * h.projection;
  return h;
}

Eigen::VectorXd RegressionModel::least_squares(const Eigen::VectorXd& v) const {
  if (v.size() != n())
    throw std::invalid_argument("least_squares: dimension mismatch");
  return coef_map_ * v;
}

Eigen::VectorXd posterior_mean(const RegressionModel& model,
                               const Eigen::VectorXd& y) {
  return model.kappa() * model.least_squares(y);
}

double log_marginal(const RegressionModel& model, const Eigen::VectorXd& y) {
  if (model.multivariate())
    throw std::invalid_argument(
        "log_marginal: multivariate model passed to univariate operation");
  const Eigen::Index n = model.n();
  if (y.size() != n)
    throw std::invalid_argument("log_marginal: dimension mismatch");
  // y^T (I - H) y = y^T y - kappa ||U^T y||^2
  const Eigen::MatrixXd& u = model.basis();
  Eigen::VectorXd uty(u.cols());
  kernels::gemv_t(u.data(), static_cast<std::size_t>(u.rows()),
                  static_cast<std::size_t>(u.cols()), y.data(), uty.data());
  const double resid = kernels::sumsq(y.data(), static_cast<std::size_t>(n)) -
                       model.kappa() *
                           kernels::sumsq(uty.data(),
                                          static_cast<std::size_t>(uty.size()));
  const double s2 = model.sigma2();
  return -0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi * s2) +
         0.5 * static_cast<double>(model.p()) * std::log1p(-model.kappa()) -
         0.5 * resid / s2;
}

double log_marginal_mv(const RegressionModel& model, const Eigen::MatrixXd& Y,
                       MvKappaExponent exponent) {
  if (!model.multivariate())
    throw std::invalid_argument(
        "log_marginal_mv: univariate model passed to multivariate operation");
  const Eigen::Index n = model.n();
  const Eigen::Index q = model.q();
  if (Y.rows() != n || Y.cols() != q)
    throw std::invalid_argument("log_marginal_mv: dimension mismatch");
  // tr(Y^T (I - H) Y Sigma^-1) = tr(Y^T Y Sigma^-1) - kappa tr(W^T W Sigma^-1)
  // with W = U^T Y.
  const Eigen::MatrixXd w = model.basis().transpose() * Y;
  const double full = (Y.transpose() * Y * model.sigma_inverse()).trace();
  const double fitted = (w.transpose() * w * model.sigma_inverse()).trace();
  const double quad = full - model.kappa() * fitted;
  const double exponent_p =
      exponent == MvKappaExponent::paper
          ? 0.5 * static_cast<double>(model.p())
          : 0.5 * static_cast<double>(model.p() * q);
  return -0.5 * static_cast<double>(n * q) *
             std::log(2.0 * std::numbers::pi) -
         0.5 * static_cast<double>(n) * model.sigma_log_det() +
         exponent_p * std::log1p(-model.kappa()) - 0.5 * quad;
}

}  // namespace bfvar::gprior
