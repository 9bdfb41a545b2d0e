// Principal angles between model subspaces and the non-shared
// degrees-of-freedom identity
//
//   ||H1 - H2||_F^2 = kappa^2 (tr P1 + tr P2 - 2 (s + sum_i cos^2 theta_i)),
//
// where s counts the exactly shared dimensions of span(X1) and span(X2)
// and the sum runs over angles strictly inside (0, pi/2).

#pragma once

#include <Eigen/Core>

#include "bfvar/gprior.hpp"

namespace bfvar::geometry {

struct PrincipalAngleReport {
  /// Angles in [0, pi/2], ascending, length min(p1, p2).
  Eigen::VectorXd angles;
  /// Squared cosines of the angles (singular values of Q1^T Q2, squared).
  Eigen::VectorXd cos_squared;
  /// s: angles that are zero within tolerance (shared dimensions).
  int shared_dims = 0;
  /// r: angles strictly inside (0, pi/2) within tolerance.
  int partial_dims = 0;
  /// tr P1 + tr P2 - 2 (s + sum of partial cos^2); the kappa = 1 value of
  /// the non-shared degrees of freedom.
  double nonshared_dof = 0.0;
  /// Set when some cos^2 lies within a factor of 10 of a classification
  /// boundary; s and r change discontinuously there.
  bool near_threshold = false;
};

/// Classification tolerance on cos^2 theta: shared above 1 - kCosSqTol,
/// orthogonal below kCosSqTol.
inline constexpr double kCosSqTol = 1e-10;

PrincipalAngleReport principal_angles(const Eigen::MatrixXd& x1,
                                      const Eigen::MatrixXd& x2);

/// ||H1 - H2||_F^2 by direct entrywise computation.
double nonshared_dof_direct(const gprior::HatMatrix& h1,
                            const gprior::HatMatrix& h2);

/// Same quantity evaluated through the principal-angle identity.
double nonshared_dof_via_angles(const Eigen::MatrixXd& x1,
                                const Eigen::MatrixXd& x2, double g);

}  // namespace bfvar::geometry
