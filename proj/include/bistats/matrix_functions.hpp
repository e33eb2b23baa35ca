#pragma once

#include <Eigen/Dense>

namespace bistats {

/// Matrix exponential by scaling-and-squaring with diagonal Pade
/// approximants (orders 3/5/7/9/13 selected by the 1-norm).
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& a);

/// Distance of the spectrum of `a` to the closed negative real axis.
/// The principal matrix logarithm exists iff this is positive.
double spectrum_branch_distance(const Eigen::MatrixXd& a);

/// Principal matrix square root via the Denman-Beavers iteration.
/// Requires no eigenvalues on the closed negative real axis.
Eigen::MatrixXd matrix_sqrt(const Eigen::MatrixXd& a);

/// Principal matrix logarithm by inverse scaling-and-squaring: repeated
/// principal square roots until close to the identity, then a diagonal
/// Pade approximant of log(I + X) in partial-fraction form.
/// Throws OutOfDomainError if an eigenvalue lies within `branch_tol`
/// of the closed negative real axis.
Eigen::MatrixXd matrix_log(const Eigen::MatrixXd& a, double branch_tol = 1e-8);

}  // namespace bistats
