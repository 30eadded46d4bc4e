#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tsbound/linalg.hpp"
#include "tsbound/loss.hpp"
#include "tsbound/series.hpp"

namespace tsbound {

enum class PredictorKind { mean, ar, var, statespace, sv, custom_linear };

std::string_view to_string(PredictorKind kind);

/// View of Y_1..Y_i: one row per observation. Forecast rules only ever receive this prefix,
/// so a rule cannot look past time i.
using History = Eigen::Ref<const Matrix>;

/// The forecasting map behind a predictor: f_i(Y_1..Y_i) -> forecast of Y_{i+1}.
class ForecastRule {
 public:
  virtual ~ForecastRule() = default;

  virtual Vector forecast(const History& history) const = 0;

  /// Forecasts of Y_{i+1} for i = first..values.rows()-1. Rules with recursive state
  /// (Kalman) override this to avoid refiltering per step. Row i of the result only
  /// depends on the first i rows of `values`.
  virtual std::vector<Vector> forecast_path(const History& values, std::size_t first) const;

  virtual Eigen::Index output_dim() const = 0;
};

/// A parameterized forecasting method. `memory` is d: the fixed-memory length, or the
/// truncation depth used for bounding when the rule has growing memory.
class Predictor {
 public:
  Predictor(PredictorKind kind, std::size_t memory, std::shared_ptr<const ForecastRule> rule,
            std::string label = {});

  PredictorKind kind() const noexcept { return kind_; }
  std::size_t memory() const noexcept { return memory_; }
  const std::string& label() const noexcept { return label_; }
  const ForecastRule& rule() const noexcept { return *rule_; }
  bool growing_memory() const noexcept {
    return kind_ == PredictorKind::statespace || kind_ == PredictorKind::sv ||
           kind_ == PredictorKind::custom_linear;
  }

  Vector forecast(const History& history) const { return rule_->forecast(history); }
  std::vector<Vector> forecast_path(const History& values, std::size_t first) const {
    return rule_->forecast_path(values, first);
  }

 private:
  PredictorKind kind_;
  std::size_t memory_;
  std::shared_ptr<const ForecastRule> rule_;
  std::string label_;
};

enum class TrainingNormalization {
  /// 1/(n-d-1) in front of the n-d summands.
  n_minus_d_minus_1,
  /// Plain average, 1/(n-d).
  n_minus_d,
};

/// (1/(n-d-1)) sum_{i=d}^{n-1} l(Y_{i+1} - f_i(Y_1..Y_i)). Requires 0 <= d < n-1.
double training_error(const TimeSeries& series, const Predictor& predictor, std::size_t d,
                      const LossSpec& loss,
                      TrainingNormalization norm = TrainingNormalization::n_minus_d_minus_1);

/// Residuals Y_{i+1} - f_i(Y_1..Y_i) for i = d..n-1, one row each.
Matrix one_step_residuals(const TimeSeries& series, const Predictor& predictor, std::size_t d);

}  // namespace tsbound
