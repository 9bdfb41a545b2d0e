#include "bfvar/geometry.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bfvar::geometry {

namespace {

// Thin orthonormal basis of span(x); rejects rank-deficient input.
Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& x) {
  if (x.rows() == 0 || x.cols() == 0 || x.rows() < x.cols())
    throw std::invalid_argument("principal_angles: invalid design shape");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * sv(0))
    throw std::invalid_argument("principal_angles: design rank deficient");
  return svd.matrixU();
}

bool near_boundary(double c2, double boundary) {
  const double d = std::abs(c2 - boundary);
  return d > 0.0 && d < 10.0 * kCosSqTol;
}

}  // namespace

PrincipalAngleReport principal_angles(const Eigen::MatrixXd& x1,
                                      const Eigen::MatrixXd& x2) {
  if (x1.rows() != x2.rows())
    throw std::invalid_argument("principal_angles: row dimension mismatch");
  // Order so the first argument spans the larger subspace.
  const bool swapped = x1.cols() < x2.cols();
  const Eigen::MatrixXd q1 = orthonormal_basis(swapped ? x2 : x1);
  const Eigen::MatrixXd q2 = orthonormal_basis(swapped ? x1 : x2);

  // Singular values of Q1^T Q2 are the cosines, descending. Angles close
  // to zero are ill-conditioned through acos, so they are recomputed from
  // the sines: the singular values of Q2 - Q1 (Q1^T Q2) are sin(theta_k).
  const Eigen::MatrixXd cross = q1.transpose() * q2;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross);
  const Eigen::VectorXd cosines = svd.singularValues();
  Eigen::JacobiSVD<Eigen::MatrixXd> sine_svd(q2 - q1 * cross);
  Eigen::VectorXd sines = sine_svd.singularValues().reverse();  // ascending
  const Eigen::Index m = cosines.size();

  PrincipalAngleReport report;
  report.angles = Eigen::VectorXd(m);
  report.cos_squared = Eigen::VectorXd(m);
  double partial_cos2_sum = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double c = std::clamp(cosines(i), 0.0, 1.0);
    const double s = std::clamp(sines(i), 0.0, 1.0);
    const double c2 = c * c;
    report.angles(i) = c2 > 0.5 ? std::asin(s) : std::acos(c);
    report.cos_squared(i) = c2;
    if (c2 > 1.0 - kCosSqTol) {
      ++report.shared_dims;
    } else if (c2 >= kCosSqTol) {
      ++report.partial_dims;
      partial_cos2_sum += c2;
    }
    if (near_boundary(c2, kCosSqTol) || near_boundary(c2, 1.0 - kCosSqTol))
      report.near_threshold = true;
  }
  report.nonshared_dof =
      static_cast<double>(q1.cols() + q2.cols()) -
      2.0 * (static_cast<double>(report.shared_dims) + partial_cos2_sum);
  return report;
}

double nonshared_dof_direct(const gprior::HatMatrix& h1,
                            const gprior::HatMatrix& h2) {
  if (h1.matrix.rows() != h2.matrix.rows())
    throw std::invalid_argument("nonshared_dof_direct: dimension mismatch");
  if (std::abs(h1.kappa - h2.kappa) > 1e-12)
    throw std::invalid_argument(
        "nonshared_dof_direct: hat matrices must share kappa");
  return (h1.matrix - h2.matrix).squaredNorm();
}

double nonshared_dof_via_angles(const Eigen::MatrixXd& x1,
                                const Eigen::MatrixXd& x2, double g) {
  const double kappa = gprior::shrinkage(g);
  return kappa * kappa * principal_angles(x1, x2).nonshared_dof;
}

}  // namespace bfvar::geometry
