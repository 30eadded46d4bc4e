#include "tsbound/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "tsbound/error.hpp"

namespace tsbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Run {
  const std::function<double(const Vector&)>& f;
  const Box& box;
  int evals = 0;

  double eval(const Vector& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
  }
};

}  // namespace

SimplexResult minimize_box_simplex(const std::function<double(const Vector&)>& objective,
                                   const Vector& x0, const Box& box,
                                   const SimplexOptions& options) {
  const Eigen::Index dim = x0.size();
  if (dim < 1) throw InvalidInput("minimize_box_simplex: empty parameter vector");
  if (box.lower.size() != dim || box.upper.size() != dim)
    throw InvalidInput("minimize_box_simplex: box dimension mismatch");
  if ((box.lower.array() > box.upper.array()).any())
    throw InvalidInput("minimize_box_simplex: box lower bound exceeds upper bound");

  Run run{objective, box};
  const auto n = static_cast<std::size_t>(dim);
  std::vector<Vector> pts(n + 1);
  std::vector<double> vals(n + 1);

  Vector best = box.project(x0);
  double best_val = run.eval(best);
  int iterations = 0;
  bool converged = false;

  for (int round = 0; round <= options.restarts && iterations < options.max_iterations; ++round) {
    pts[0] = best;
    vals[0] = best_val;
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const double width = box.upper(ii) - box.lower(ii);
      double step = options.initial_step * std::max(std::abs(best(ii)), 1.0);
      if (std::isfinite(width) && width > 0.0) step = std::min(step, 0.25 * width);
      Vector p = best;
      p(ii) += step;
      if (p(ii) > box.upper(ii)) p(ii) = best(ii) - step;
      pts[i + 1] = box.project(p);
      vals[i + 1] = run.eval(pts[i + 1]);
    }

    std::vector<std::size_t> order(n + 1);
    converged = false;
    while (iterations < options.max_iterations) {
      ++iterations;
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
      const std::size_t lo = order.front();
      const std::size_t hi = order.back();
      const std::size_t second_hi = order[n - 1];

      double diameter = 0.0;
      for (std::size_t i = 0; i <= n; ++i)
        diameter = std::max(diameter, (pts[i] - pts[lo]).cwiseAbs().maxCoeff());
      const double scale = 1.0 + pts[lo].cwiseAbs().maxCoeff();
      const bool f_flat = std::isfinite(vals[hi]) &&
                          std::abs(vals[hi] - vals[lo]) <= options.f_tol * (std::abs(vals[lo]) + options.f_tol);
      if (f_flat && diameter <= options.x_tol * scale) {
        converged = true;
        break;
      }
      if (diameter <= 1e-15 * scale) {
        converged = f_flat;
        break;
      }

      Vector centroid = Vector::Zero(dim);
      for (std::size_t i = 0; i <= n; ++i)
        if (i != hi) centroid += pts[i];
      centroid /= static_cast<double>(n);

      const Vector reflected = box.project(centroid + (centroid - pts[hi]));
      const double f_r = run.eval(reflected);
      if (f_r < vals[lo]) {
        const Vector expanded = box.project(centroid + 2.0 * (centroid - pts[hi]));
        const double f_e = run.eval(expanded);
        if (f_e < f_r) {
          pts[hi] = expanded;
          vals[hi] = f_e;
        } else {
          pts[hi] = reflected;
          vals[hi] = f_r;
        }
        continue;
      }
      if (f_r < vals[second_hi]) {
        pts[hi] = reflected;
        vals[hi] = f_r;
        continue;
      }
      const bool outside = f_r < vals[hi];
      const Vector contracted = outside ? box.project(centroid + 0.5 * (reflected - centroid))
                                        : box.project(centroid + 0.5 * (pts[hi] - centroid));
      const double f_c = run.eval(contracted);
      if (f_c < (outside ? f_r : vals[hi])) {
        pts[hi] = contracted;
        vals[hi] = f_c;
        continue;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == lo) continue;
        pts[i] = box.project(pts[lo] + 0.5 * (pts[i] - pts[lo]));
        vals[i] = run.eval(pts[i]);
      }
    }

    const auto it = std::min_element(vals.begin(), vals.end());
    const auto idx = static_cast<std::size_t>(it - vals.begin());
    if (vals[idx] <= best_val) {
      best_val = vals[idx];
      best = pts[idx];
    }
  }

  SimplexResult res;
  res.x = best;
  res.value = best_val;
  res.iterations = iterations;
  res.evaluations = run.evals;
  res.converged = converged && std::isfinite(best_val);
  return res;
}

}  // namespace tsbound
