#pragma once

#include <functional>

#include "tsbound/linalg.hpp"

namespace tsbound {

struct Box {
  Vector lower;
  Vector upper;

  Vector project(const Vector& x) const { return x.cwiseMax(lower).cwiseMin(upper); }
  bool contains(const Vector& x) const {
    return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
  }
};

struct SimplexOptions {
  int max_iterations = 4000;
  /// Relative spread of objective values across the simplex that counts as converged.
  double f_tol = 1e-10;
  /// Simplex diameter (relative to 1 + |x|) that counts as converged.
  double x_tol = 1e-8;
  /// Initial edge length per coordinate, as a fraction of max(|x0_i|, 1) and capped by the box.
  double initial_step = 0.1;
  /// Fresh simplex builds around the incumbent after convergence.
  int restarts = 2;
};

struct SimplexResult {
  Vector x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead with every trial point projected into the box. Non-finite objective values
/// count as +infinity, so a caller can reject a point by returning NaN or inf. Deterministic.
SimplexResult minimize_box_simplex(const std::function<double(const Vector&)>& objective,
                                   const Vector& x0, const Box& box,
                                   const SimplexOptions& options = {});

}  // namespace tsbound
