#include "tsbound/linalg.hpp"

#include <algorithm>

#include "tsbound/error.hpp"

namespace tsbound {

double spectral_radius(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("spectral_radius: matrix is not square");
  if (m.size() == 0) return 0.0;
  Eigen::EigenSolver<Matrix> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix stationary_covariance(const Matrix& transition, const Matrix& noise_cov) {
  const Eigen::Index m = transition.rows();
  if (transition.cols() != m || noise_cov.rows() != m || noise_cov.cols() != m)
    throw InvalidInput("stationary_covariance: dimension mismatch");
  if (spectral_radius(transition) >= 1.0)
    throw InvalidInput("stationary_covariance: transition is not stable");
  if (m == 1) {
    const double t = transition(0, 0);
    return Matrix::Constant(1, 1, noise_cov(0, 0) / (1.0 - t * t));
  }
  // vec(P) = (I - T (x) T)^{-1} vec(Q), column-major vec.
  const Eigen::Index mm = m * m;
  Matrix kron(mm, mm);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      kron.block(i * m, j * m, m, m) = transition(i, j) * transition;
  Matrix lhs = Matrix::Identity(mm, mm) - kron;
  Vector rhs = Eigen::Map<const Vector>(noise_cov.data(), mm);
  Vector sol = lhs.partialPivLu().solve(rhs);
  Matrix p = Eigen::Map<Matrix>(sol.data(), m, m);
  return 0.5 * (p + p.transpose());
}

Matrix psd_sqrt(const Matrix& m) {
  if (m.size() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  Vector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace tsbound
