#include "tsbound/predictor.hpp"

#include "tsbound/error.hpp"

namespace tsbound {

std::string_view to_string(PredictorKind kind) {
  switch (kind) {
    case PredictorKind::mean: return "mean";
    case PredictorKind::ar: return "ar";
    case PredictorKind::var: return "var";
    case PredictorKind::statespace: return "statespace";
    case PredictorKind::sv: return "sv";
    case PredictorKind::custom_linear: return "custom-linear";
  }
  return "?";
}

std::vector<Vector> ForecastRule::forecast_path(const History& values, std::size_t first) const {
  std::vector<Vector> out;
  const auto n = static_cast<std::size_t>(values.rows());
  if (first > n) return out;
  out.reserve(n - first);
  for (std::size_t i = first; i < n; ++i)
    out.push_back(forecast(values.topRows(static_cast<Eigen::Index>(i))));
  return out;
}

Predictor::Predictor(PredictorKind kind, std::size_t memory,
                     std::shared_ptr<const ForecastRule> rule, std::string label)
    : kind_(kind), memory_(memory), rule_(std::move(rule)), label_(std::move(label)) {
  if (!rule_) throw InvalidInput("Predictor: missing forecast rule");
  if (label_.empty()) label_ = std::string(to_string(kind_));
}

Matrix one_step_residuals(const TimeSeries& series, const Predictor& predictor, std::size_t d) {
  const std::size_t n = series.size();
  if (d + 1 >= n) throw InvalidInput("training_error: need d < n-1");
  if (predictor.rule().output_dim() != static_cast<Eigen::Index>(series.dim()))
    throw InvalidInput("training_error: predictor dimension " +
                       std::to_string(predictor.rule().output_dim()) +
                       " does not match series dimension " + std::to_string(series.dim()));
  const Matrix& y = series.values();
  auto path = predictor.forecast_path(y, d);
  if (path.size() != n - d) throw InvalidInput("training_error: forecast path length mismatch");
  Matrix res(static_cast<Eigen::Index>(n - d), y.cols());
  for (std::size_t i = d; i < n; ++i) {
    const Vector& f = path[i - d];
    if (f.size() != y.cols()) throw InvalidInput("training_error: forecast dimension mismatch");
    res.row(static_cast<Eigen::Index>(i - d)) = y.row(static_cast<Eigen::Index>(i)) - f.transpose();
  }
  return res;
}

double training_error(const TimeSeries& series, const Predictor& predictor, std::size_t d,
                      const LossSpec& loss, TrainingNormalization norm) {
  const Matrix res = one_step_residuals(series, predictor, d);
  double sum = 0.0;
  for (Eigen::Index r = 0; r < res.rows(); ++r) sum += loss(Vector(res.row(r).transpose()));
  const double n = static_cast<double>(series.size());
  const double dd = static_cast<double>(d);
  const double denom = norm == TrainingNormalization::n_minus_d_minus_1 ? n - dd - 1.0 : n - dd;
  return sum / denom;
}

}  // namespace tsbound
