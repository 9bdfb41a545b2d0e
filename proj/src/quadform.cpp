#include "bfvar/quadform.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>
#include <utility>

namespace bfvar::quadform {

namespace {

// Relative asymmetry ||A - A^T|| / ||A||, zero matrices counting as symmetric.
double relative_asymmetry(const Eigen::MatrixXd& a) {
  const double scale = a.norm();
  if (scale == 0.0) return 0.0;
  return (a - a.transpose()).norm() / scale;
}

Eigen::MatrixXd check_and_symmetrize(Eigen::MatrixXd a, const char* what) {
  if (a.rows() != a.cols())
    throw std::invalid_argument(std::string(what) + ": matrix must be square");
  if (relative_asymmetry(a) > 1e-8)
    throw std::invalid_argument(std::string(what) +
                                ": matrix is not symmetric");
  a = ((a + a.transpose()) / 2.0).eval();
  return a;
}

}  // namespace

GaussianSpec::GaussianSpec(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)),
      covariance_(check_and_symmetrize(std::move(covariance), "GaussianSpec")) {
  if (covariance_.rows() != mean_.size())
    throw std::invalid_argument(
        "GaussianSpec: mean and covariance dimensions disagree");
  if (mean_.size() == 0)
    throw std::invalid_argument("GaussianSpec: dimension must be positive");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(covariance_,
                                                    Eigen::EigenvaluesOnly);
  const double largest = es.eigenvalues().maxCoeff();
  const double floor = -1e-10 * std::max(largest, 0.0);
  if (es.eigenvalues().minCoeff() < floor)
    throw std::invalid_argument(
        "GaussianSpec: covariance is not positive semi-definite");
}

QuadForm::QuadForm(Eigen::MatrixXd matrix)
    : matrix_(check_and_symmetrize(std::move(matrix), "QuadForm")) {}

namespace {

void check_dims(const QuadForm& a, const GaussianSpec& g) {
  if (a.dim() != g.dim())
    throw std::invalid_argument("quadform: dimension mismatch");
}

}  // namespace

double quad_mean(const QuadForm& a, const GaussianSpec& g) {
  check_dims(a, g);
  const Eigen::MatrixXd& m = a.matrix();
  return g.mean().dot(m * g.mean()) + (m * g.covariance()).trace();
}

double quad_cov(const QuadForm& a1, const QuadForm& a2, const GaussianSpec& g) {
  check_dims(a1, g);
  check_dims(a2, g);
  const Eigen::MatrixXd a1s = a1.matrix() * g.covariance();
  const Eigen::MatrixXd a2s = a2.matrix() * g.covariance();
  const double trace_term = (a1s * a2s).trace();
  const double mean_term = g.mean().dot(a1s * (a2.matrix() * g.mean()));
  return 2.0 * trace_term + 4.0 * mean_term;
}

double quad_var(const QuadForm& a, const GaussianSpec& g) {
  return quad_cov(a, a, g);
}

}  // namespace bfvar::quadform
