#pragma once

#include <Eigen/Dense>

namespace tsbound {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Largest |eigenvalue| of a square matrix.
double spectral_radius(const Matrix& m);

/// Operator 2-norm (largest singular value).
double operator_norm(const Matrix& m);

/// Solves P = T P T' + Q for the stationary state covariance. Requires spectral_radius(T) < 1.
Matrix stationary_covariance(const Matrix& transition, const Matrix& noise_cov);

/// Symmetric square root of a PSD matrix; negative eigenvalues from round-off are clipped.
Matrix psd_sqrt(const Matrix& m);

}  // namespace tsbound
