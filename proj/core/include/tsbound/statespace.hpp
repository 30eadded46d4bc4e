#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tsbound/linalg.hpp"
#include "tsbound/loss.hpp"
#include "tsbound/predictor.hpp"
#include "tsbound/series.hpp"

namespace tsbound {

/// Linear-Gaussian state-space model
///
///   y_t       = c + Z alpha_t + eps_t,      eps_t ~ N(0, H)
///   alpha_t+1 = T alpha_t + eta_t+1,        eta_t ~ N(0, Q)
///   alpha_1   ~ N(a1, P1)
///
/// `obs_offset` (c) is a known intercept removed from the data before filtering; it is
/// zero unless a model family sets it (the stochastic-volatility level does).
/// Construction validates dimensions, symmetry/PSD of H, Q, P1, and stationarity of T.
class StateSpaceModel {
 public:
  StateSpaceModel(Matrix z, Matrix t, Matrix h, Matrix q, Vector a1, Matrix p1,
                  Vector obs_offset = {});

  Eigen::Index obs_dim() const noexcept { return z_.rows(); }
  Eigen::Index state_dim() const noexcept { return t_.rows(); }

  const Matrix& Z() const noexcept { return z_; }
  const Matrix& T() const noexcept { return t_; }
  const Matrix& H() const noexcept { return h_; }
  const Matrix& Q() const noexcept { return q_; }
  const Vector& a1() const noexcept { return a1_; }
  const Matrix& P1() const noexcept { return p1_; }
  const Vector& obs_offset() const noexcept { return offset_; }

 private:
  Matrix z_, t_, h_, q_;
  Vector a1_;
  Matrix p1_;
  Vector offset_;
};

/// Per-step filter quantities, index t-1 for time t = 1..n.
struct KalmanOutput {
  /// Innovation covariance S_t = Z P_t Z' + H.
  std::vector<Matrix> innovation_cov;
  /// F_t = S_t^{-1}.
  std::vector<Matrix> inv_innovation_cov;
  /// K_t = T P_t Z' F_t.
  std::vector<Matrix> gain;
  /// L_t = T - K_t Z.
  std::vector<Matrix> transfer;
  /// P_t, predicted state covariance before seeing y_t.
  std::vector<Matrix> state_cov;
  /// v_t = y_t - c - Z a_t.
  std::vector<Vector> innovation;
  /// forecast[t] is the forecast of y_{t+1} from y_1..y_t, for t = 0..n (size n+1).
  std::vector<Vector> forecast;
  /// (1/2) sum_t [log det S_t + v_t' S_t^{-1} v_t], additive constants dropped.
  double neg_loglik = 0.0;

  std::size_t steps() const noexcept { return gain.size(); }
};

/// Runs the prediction recursions over the rows of `y`. Throws InvalidInput on dimension
/// mismatch or a numerically singular innovation covariance.
KalmanOutput kalman_filter(const StateSpaceModel& model, const Eigen::Ref<const Matrix>& y);
KalmanOutput kalman_filter(const StateSpaceModel& model, const TimeSeries& series);

/// Dense linear-predictor weights. Row t (t = first_row..last_row) expresses the forecast of
/// y_{t+1} as sum_{j=1}^{t} b_{t,j} y_j + init_t (+ obs offset): entries with j > t are
/// structurally absent.
struct PredictionWeights {
  std::size_t first_row = 0;
  /// rows[t - first_row][j - 1] = b_{t,j}, each p x p.
  std::vector<std::vector<Matrix>> rows;
  /// Z (prod_{i=1}^{t} L_i) a1 per row.
  std::vector<Vector> init;
  Vector obs_offset;

  std::size_t last_row() const noexcept { return first_row + rows.size() - 1; }
  const std::vector<Matrix>& row(std::size_t t) const;
  /// sum_j b_{t,j} y_j + init_t + offset, using rows of y for y_1..y_t.
  Vector reconstruct(std::size_t t, const Eigen::Ref<const Matrix>& y) const;
};

/// b_{t,j} = Z (prod_{i=j+1}^{t} L_i) K_j for rows t = d..n, accumulated right to left.
PredictionWeights prediction_weights(const StateSpaceModel& model, std::size_t n, std::size_t d,
                                     const KalmanOutput& filter_out);

struct TruncationPenalty {
  double first_term = 0.0;
  double second_term = 0.0;
  double total = 0.0;
};

/// Truncation penalty of a fitted state-space predictor at memory d, from filter output:
///   first  = Delta^2 EY1 sum_{j=1}^{n-d} |prod_{i=j+1}^{n} L_i K_j|
///   second = Delta/(n-d-1) sum_{t=d+1}^{n-1} l(sum_{j=1}^{t-d} prod_{i=j+1}^{t} L_i K_j y_j)
/// Matrix terms go through the operator 2-norm. y_j is taken net of the obs offset.
TruncationPenalty delta_d_statespace(const StateSpaceModel& model, const TimeSeries& series,
                                     std::size_t d, const LossSpec& loss, double ey1);
TruncationPenalty delta_d_statespace(const StateSpaceModel& model, const TimeSeries& series,
                                     const KalmanOutput& filter_out, std::size_t d,
                                     const LossSpec& loss, double ey1);

/// Same penalty for an arbitrary growing-memory linear predictor given as weights:
///   Delta^2 EY1 sum_{j=1}^{n-d-1} l(b_{n,j}) + Delta/(n-d-1) sum_{i=d+1}^{n-1} l(sum_{j=1}^{i-d} b_{i,j} y_j)
/// Weights must cover rows d+1..n with exactly t entries in row t.
TruncationPenalty delta_d_linear(const PredictionWeights& weights, const TimeSeries& series,
                                 std::size_t d, const LossSpec& loss, double ey1);

/// Draws alpha_1 ~ N(a1, P1) and iterates the state and observation equations.
/// Deterministic for a given seed.
TimeSeries simulate_statespace(const StateSpaceModel& model, std::size_t n, std::uint64_t seed);

/// Kalman one-step forecasts as a ForecastRule.
class StateSpaceRule : public ForecastRule {
 public:
  explicit StateSpaceRule(StateSpaceModel model) : model_(std::move(model)) {}

  Vector forecast(const History& history) const override;
  std::vector<Vector> forecast_path(const History& values, std::size_t first) const override;
  Eigen::Index output_dim() const override { return model_.obs_dim(); }
  const StateSpaceModel& model() const noexcept { return model_; }

 private:
  StateSpaceModel model_;
};

/// Forecasts read off explicit weights (custom growing-memory linear predictors).
class LinearWeightsRule : public ForecastRule {
 public:
  explicit LinearWeightsRule(PredictionWeights weights);

  Vector forecast(const History& history) const override;
  Eigen::Index output_dim() const override { return dim_; }

 private:
  PredictionWeights weights_;
  Eigen::Index dim_;
};

Predictor make_statespace_predictor(StateSpaceModel model, std::size_t memory,
                                    PredictorKind kind = PredictorKind::statespace,
                                    std::string label = {});

}  // namespace tsbound
