#include "tsbound/forecasters.hpp"

#include <memory>
#include <string>

#include "tsbound/error.hpp"

namespace tsbound {

int LinearFit::parameter_count() const noexcept {
  const auto k = static_cast<int>(dim());
  return (has_intercept ? k : 0) + static_cast<int>(lags.size()) * k * k;
}

LinearFit fit_mean(const TimeSeries& series) {
  LinearFit fit;
  const Matrix& y = series.values();
  fit.intercept = y.colwise().mean().transpose();
  fit.has_intercept = true;
  const Matrix centered = y.rowwise() - fit.intercept.transpose();
  const double denom = y.rows() > 1 ? static_cast<double>(y.rows() - 1) : 1.0;
  fit.residual_cov = centered.transpose() * centered / denom;
  fit.fitted_n = series.size();
  return fit;
}

LinearFit fit_ar(const TimeSeries& series, std::size_t d, bool intercept) {
  if (series.dim() != 1) throw InvalidInput("fit_ar: series must be scalar (use fit_var)");
  return fit_var(series, d, intercept);
}

LinearFit fit_var(const TimeSeries& series, std::size_t d, bool intercept) {
  const std::size_t n = series.size();
  const auto k = static_cast<Eigen::Index>(series.dim());
  if (n <= d + 1)
    throw InvalidInput("fit_var: need n > d + 1 (n = " + std::to_string(n) + ", d = " +
                       std::to_string(d) + ")");
  if (d == 0 && !intercept) throw InvalidInput("fit_var: d = 0 without intercept has no regressors");
  const Matrix& y = series.values();
  const auto rows = static_cast<Eigen::Index>(n - d);
  const Eigen::Index off = intercept ? 1 : 0;
  const Eigen::Index cols = off + static_cast<Eigen::Index>(d) * k;
  if (rows < cols)
    throw InvalidInput("fit_var: more regressors than observations");

  // Row r regresses Y_{d+r+1} on (1, Y_{d+r}, ..., Y_{r+1}), 1-based times.
  Matrix X(rows, cols);
  Matrix target(rows, k);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Eigen::Index t = static_cast<Eigen::Index>(d) + r;  // 0-based row of the target
    if (intercept) X(r, 0) = 1.0;
    for (std::size_t l = 1; l <= d; ++l)
      X.block(r, off + static_cast<Eigen::Index>(l - 1) * k, 1, k) =
          y.row(t - static_cast<Eigen::Index>(l));
    target.row(r) = y.row(t);
  }

  Eigen::ColPivHouseholderQR<Matrix> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < cols)
    throw InvalidInput("fit_var: design matrix is rank deficient (rank " + std::to_string(qr.rank()) +
                       " < " + std::to_string(cols) + ")");
  Matrix coef(cols, k);
  for (Eigen::Index eq = 0; eq < k; ++eq) coef.col(eq) = qr.solve(Vector(target.col(eq)));

  LinearFit fit;
  fit.has_intercept = intercept;
  fit.intercept = intercept ? Vector(coef.row(0).transpose()) : Vector::Zero(k);
  fit.lags.resize(d);
  for (std::size_t l = 1; l <= d; ++l)
    fit.lags[l - 1] = coef.block(off + static_cast<Eigen::Index>(l - 1) * k, 0, k, k).transpose();
  const Matrix resid = target - X * coef;
  const double dof = rows > cols ? static_cast<double>(rows - cols) : 1.0;
  fit.residual_cov = resid.transpose() * resid / dof;
  fit.fitted_n = n;
  return fit;
}

Vector forecast(const LinearFit& fit, const Eigen::Ref<const Matrix>& history) {
  const std::size_t d = fit.memory();
  if (static_cast<std::size_t>(history.rows()) < d)
    throw InvalidInput("forecast: history of length " + std::to_string(history.rows()) +
                       " is shorter than the memory d = " + std::to_string(d));
  if (d > 0 && history.cols() != fit.dim())
    throw InvalidInput("forecast: history dimension does not match the fit");
  Vector out = fit.intercept;
  const Eigen::Index last = history.rows() - 1;
  for (std::size_t l = 1; l <= d; ++l)
    out += fit.lags[l - 1] * history.row(last - static_cast<Eigen::Index>(l - 1)).transpose();
  return out;
}

Vector LinearLagRule::forecast(const History& history) const {
  return tsbound::forecast(fit_, history);
}

Predictor make_linear_predictor(LinearFit fit, std::string label) {
  const std::size_t d = fit.memory();
  PredictorKind kind = PredictorKind::mean;
  if (d > 0) kind = fit.dim() == 1 ? PredictorKind::ar : PredictorKind::var;
  return Predictor(kind, d, std::make_shared<LinearLagRule>(std::move(fit)), std::move(label));
}

}  // namespace tsbound
