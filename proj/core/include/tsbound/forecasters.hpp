#pragma once

#include <cstddef>
#include <vector>

#include "tsbound/linalg.hpp"
#include "tsbound/predictor.hpp"
#include "tsbound/series.hpp"

namespace tsbound {

/// Least-squares fit of Y_{t+1} = c + A_1 Y_t + ... + A_d Y_{t-d+1} + e.
struct LinearFit {
  /// c, length k (zero when fitted without intercept).
  Vector intercept;
  /// A_1..A_d, each k x k; lag 1 first.
  std::vector<Matrix> lags;
  bool has_intercept = true;
  /// Residual covariance, divisor (rows - regressors).
  Matrix residual_cov;
  std::size_t fitted_n = 0;

  std::size_t memory() const noexcept { return lags.size(); }
  Eigen::Index dim() const noexcept { return intercept.size(); }
  /// Number of estimated coefficients (intercepts plus lag entries).
  int parameter_count() const noexcept;
};

/// Sample mean as a constant forecast; d = 0.
LinearFit fit_mean(const TimeSeries& series);

/// Scalar AR(d) by OLS with column-pivoted QR. Requires n > d + 1; a rank-deficient design
/// (e.g. a constant series with an intercept) throws InvalidInput.
LinearFit fit_ar(const TimeSeries& series, std::size_t d, bool intercept = true);

/// VAR(d) on a k-dimensional series, equation by equation. k = 1 is identical to fit_ar.
LinearFit fit_var(const TimeSeries& series, std::size_t d, bool intercept = true);

/// c + sum_l A_l y_{last+1-l}. Throws when the history is shorter than d.
Vector forecast(const LinearFit& fit, const Eigen::Ref<const Matrix>& history);

class LinearLagRule : public ForecastRule {
 public:
  explicit LinearLagRule(LinearFit fit) : fit_(std::move(fit)) {}
  Vector forecast(const History& history) const override;
  Eigen::Index output_dim() const override { return fit_.dim(); }
  const LinearFit& fit() const noexcept { return fit_; }

 private:
  LinearFit fit_;
};

/// Wraps a fit as a fixed-memory predictor (kind mean when d = 0 without lags, else ar/var).
Predictor make_linear_predictor(LinearFit fit, std::string label = {});

}  // namespace tsbound
