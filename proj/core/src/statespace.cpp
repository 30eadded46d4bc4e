#include "tsbound/statespace.hpp"

#include <cmath>
#include <random>
#include <string>

#include "tsbound/error.hpp"

namespace tsbound {

namespace {

void require_square(const Matrix& m, Eigen::Index dim, const char* name) {
  if (m.rows() != dim || m.cols() != dim)
    throw InvalidInput(std::string("state-space model: ") + name + " must be " +
                       std::to_string(dim) + "x" + std::to_string(dim));
}

void require_psd(const Matrix& m, const char* name) {
  if (m.size() == 0) return;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidInput(std::string("state-space model: ") + name + " is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10 * scale)
    throw InvalidInput(std::string("state-space model: ") + name + " is not positive semidefinite");
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

StateSpaceModel::StateSpaceModel(Matrix z, Matrix t, Matrix h, Matrix q, Vector a1, Matrix p1,
                                 Vector obs_offset)
    : z_(std::move(z)), t_(std::move(t)), h_(std::move(h)), q_(std::move(q)), a1_(std::move(a1)),
      p1_(std::move(p1)), offset_(std::move(obs_offset)) {
  const Eigen::Index p = z_.rows();
  const Eigen::Index m = z_.cols();
  if (p < 1 || m < 1) throw InvalidInput("state-space model: Z must be non-empty");
  require_square(t_, m, "T");
  require_square(h_, p, "H");
  require_square(q_, m, "Q");
  require_square(p1_, m, "P1");
  if (a1_.size() != m) throw InvalidInput("state-space model: a1 must have state dimension");
  if (offset_.size() == 0) offset_ = Vector::Zero(p);
  if (offset_.size() != p) throw InvalidInput("state-space model: offset must have obs dimension");
  if (!(z_.allFinite() && t_.allFinite() && h_.allFinite() && q_.allFinite() && a1_.allFinite() &&
        p1_.allFinite() && offset_.allFinite()))
    throw InvalidInput("state-space model: non-finite entries");
  require_psd(h_, "H");
  require_psd(q_, "Q");
  require_psd(p1_, "P1");
  const double rho = spectral_radius(t_);
  if (rho >= 1.0 - 1e-10)
    throw InvalidInput("state-space model: T is not stationary (spectral radius " +
                       std::to_string(rho) + ")");
}

KalmanOutput kalman_filter(const StateSpaceModel& model, const Eigen::Ref<const Matrix>& y) {
  if (y.cols() != model.obs_dim())
    throw InvalidInput("kalman_filter: series dimension " + std::to_string(y.cols()) +
                       " does not match model observation dimension " +
                       std::to_string(model.obs_dim()));
  const auto n = static_cast<std::size_t>(y.rows());
  const Matrix& Z = model.Z();
  const Matrix& T = model.T();
  KalmanOutput out;
  out.innovation_cov.reserve(n);
  out.inv_innovation_cov.reserve(n);
  out.gain.reserve(n);
  out.transfer.reserve(n);
  out.state_cov.reserve(n);
  out.innovation.reserve(n);
  out.forecast.reserve(n + 1);

  Vector a = model.a1();
  Matrix P = model.P1();
  double nll = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const Vector pred = model.obs_offset() + Z * a;
    out.forecast.push_back(pred);
    const Vector v = y.row(static_cast<Eigen::Index>(t)).transpose() - pred;
    const Matrix S = symmetrize(Z * P * Z.transpose() + model.H());
    Eigen::LDLT<Matrix> ldlt(S);
    const Vector diag = ldlt.vectorD();
    const double dmax = diag.cwiseAbs().maxCoeff();
    if (ldlt.info() != Eigen::Success || !(diag.minCoeff() > 1e-13 * std::max(dmax, 1e-300)) ||
        !(dmax > 0.0))
      throw InvalidInput("kalman_filter: innovation covariance is numerically singular at t = " +
                         std::to_string(t + 1));
    const Matrix F = ldlt.solve(Matrix::Identity(S.rows(), S.cols()));
    const Matrix K = T * P * Z.transpose() * F;
    const Matrix L = T - K * Z;
    nll += 0.5 * (diag.array().log().sum() + v.dot(ldlt.solve(v)));

    out.innovation_cov.push_back(S);
    out.inv_innovation_cov.push_back(F);
    out.gain.push_back(K);
    out.transfer.push_back(L);
    out.state_cov.push_back(P);
    out.innovation.push_back(v);

    a = T * a + K * v;
    P = symmetrize(T * P * L.transpose() + model.Q());
  }
  out.forecast.push_back(model.obs_offset() + Z * a);
  out.neg_loglik = nll;
  return out;
}

KalmanOutput kalman_filter(const StateSpaceModel& model, const TimeSeries& series) {
  return kalman_filter(model, series.values());
}

const std::vector<Matrix>& PredictionWeights::row(std::size_t t) const {
  if (t < first_row || t > last_row() || rows.empty())
    throw InvalidInput("prediction weights: row " + std::to_string(t) + " not materialized");
  return rows[t - first_row];
}

Vector PredictionWeights::reconstruct(std::size_t t, const Eigen::Ref<const Matrix>& y) const {
  const auto& r = row(t);
  if (static_cast<std::size_t>(y.rows()) < t)
    throw InvalidInput("prediction weights: history shorter than row index");
  Vector out = init[t - first_row] + obs_offset;
  for (std::size_t j = 1; j <= t; ++j)
    out += r[j - 1] * (y.row(static_cast<Eigen::Index>(j - 1)).transpose() - obs_offset);
  return out;
}

PredictionWeights prediction_weights(const StateSpaceModel& model, std::size_t n, std::size_t d,
                                     const KalmanOutput& filter_out) {
  if (filter_out.steps() < n) throw InvalidInput("prediction_weights: filter output shorter than n");
  if (d > n) throw InvalidInput("prediction_weights: need d <= n");
  const Eigen::Index m = model.state_dim();
  PredictionWeights w;
  w.first_row = d;
  w.obs_offset = model.obs_offset();
  w.rows.resize(n - d + 1);
  w.init.resize(n - d + 1);
  for (std::size_t t = d; t <= n; ++t) {
    auto& row = w.rows[t - d];
    row.resize(t);
    Matrix G = Matrix::Identity(m, m);  // L_t ... L_{j+1}
    for (std::size_t j = t; j >= 1; --j) {
      row[j - 1] = model.Z() * G * filter_out.gain[j - 1];
      G = G * filter_out.transfer[j - 1];
    }
    w.init[t - d] = model.Z() * G * model.a1();
  }
  return w;
}

TruncationPenalty delta_d_statespace(const StateSpaceModel& model, const TimeSeries& series,
                                     std::size_t d, const LossSpec& loss, double ey1) {
  return delta_d_statespace(model, series, kalman_filter(model, series), d, loss, ey1);
}

TruncationPenalty delta_d_statespace(const StateSpaceModel& model, const TimeSeries& series,
                                     const KalmanOutput& out, std::size_t d,
                                     const LossSpec& loss, double ey1) {
  const std::size_t n = series.size();
  if (d < 1 || d >= n) throw InvalidInput("delta_d: need 1 <= d < n");
  if (out.steps() != n) throw InvalidInput("delta_d: filter output does not match series length");
  if (ey1 < 0.0) throw InvalidInput("delta_d: E[l(Y_1)] bound must be nonnegative");
  const Eigen::Index m = model.state_dim();
  const double delta = loss.delta();

  // sum_{j=1}^{n-d} |L_n ... L_{j+1} K_j|
  double first_sum = 0.0;
  Matrix G = Matrix::Identity(m, m);
  for (std::size_t j = n; j >= 1; --j) {
    if (j <= n - d) first_sum += operator_norm(G * out.gain[j - 1]);
    G = G * out.transfer[j - 1];
  }

  // x_k = L_k x_{k-1} + K_k y_k collects sum_{j<=k} prod_{i=j+1}^{k} L_i K_j y_j, so the
  // truncated tail at time t is L_t ... L_{t-d+1} x_{t-d}.
  double second_sum = 0.0;
  if (n >= d + 2) {
    std::vector<Vector> x(n + 1, Vector::Zero(m));
    for (std::size_t k = 1; k <= n; ++k) {
      const Vector yk = series.at(k) - model.obs_offset();
      x[k] = out.transfer[k - 1] * x[k - 1] + out.gain[k - 1] * yk;
    }
    for (std::size_t t = d + 1; t <= n - 1; ++t) {
      Vector s = x[t - d];
      for (std::size_t i = t - d + 1; i <= t; ++i) s = out.transfer[i - 1] * s;
      second_sum += loss(s);
    }
  }

  TruncationPenalty r;
  r.first_term = delta * delta * ey1 * first_sum;
  r.second_term = n >= d + 2 ? delta / static_cast<double>(n - d - 1) * second_sum : 0.0;
  r.total = r.first_term + r.second_term;
  return r;
}

TruncationPenalty delta_d_linear(const PredictionWeights& w, const TimeSeries& series,
                                 std::size_t d, const LossSpec& loss, double ey1) {
  const std::size_t n = series.size();
  if (d < 1 || d + 1 >= n) throw InvalidInput("delta_d_linear: need 1 <= d < n-1");
  if (w.rows.empty() || w.first_row > d + 1 || w.last_row() < n)
    throw InvalidInput("delta_d_linear: weights must cover rows d+1..n");
  for (std::size_t t = std::max(w.first_row, d + 1); t <= n; ++t)
    if (w.row(t).size() != t)
      throw InvalidInput("delta_d_linear: row " + std::to_string(t) +
                         " violates the band structure (expected " + std::to_string(t) +
                         " entries, found " + std::to_string(w.row(t).size()) + ")");
  const double delta = loss.delta();
  const Vector offset = w.obs_offset.size() ? w.obs_offset : Vector::Zero(series.dim());

  double first_sum = 0.0;
  const auto& last = w.row(n);
  for (std::size_t j = 1; j + d + 1 <= n; ++j) first_sum += loss.of_matrix(last[j - 1]);

  double second_sum = 0.0;
  for (std::size_t i = d + 1; i <= n - 1; ++i) {
    const auto& r = w.row(i);
    Vector acc = Vector::Zero(static_cast<Eigen::Index>(series.dim()));
    for (std::size_t j = 1; j <= i - d; ++j) acc += r[j - 1] * (series.at(j) - offset);
    second_sum += loss(acc);
  }
  TruncationPenalty out;
  out.first_term = delta * delta * ey1 * first_sum;
  out.second_term = delta / static_cast<double>(n - d - 1) * second_sum;
  out.total = out.first_term + out.second_term;
  return out;
}

TimeSeries simulate_statespace(const StateSpaceModel& model, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("simulate_statespace: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&](Eigen::Index k) {
    Vector z(k);
    for (Eigen::Index i = 0; i < k; ++i) z(i) = gauss(rng);
    return z;
  };
  const Matrix p1_root = psd_sqrt(model.P1());
  const Matrix q_root = psd_sqrt(model.Q());
  const Matrix h_root = psd_sqrt(model.H());
  const Eigen::Index m = model.state_dim();
  const Eigen::Index p = model.obs_dim();

  Matrix y(static_cast<Eigen::Index>(n), p);
  Vector alpha = model.a1() + p1_root * draw(m);
  for (std::size_t t = 0; t < n; ++t) {
    y.row(static_cast<Eigen::Index>(t)) =
        (model.obs_offset() + model.Z() * alpha + h_root * draw(p)).transpose();
    alpha = model.T() * alpha + q_root * draw(m);
  }
  return TimeSeries(std::move(y), std::nullopt, "simulated");
}

Vector StateSpaceRule::forecast(const History& history) const {
  if (history.rows() == 0) return model_.obs_offset() + model_.Z() * model_.a1();
  return kalman_filter(model_, history).forecast.back();
}

std::vector<Vector> StateSpaceRule::forecast_path(const History& values, std::size_t first) const {
  auto out = kalman_filter(model_, values);
  // forecast[i] uses y_1..y_i only; drop forecast of y_{n+1}.
  out.forecast.pop_back();
  if (first >= out.forecast.size()) return {};
  return {out.forecast.begin() + static_cast<std::ptrdiff_t>(first), out.forecast.end()};
}

LinearWeightsRule::LinearWeightsRule(PredictionWeights weights) : weights_(std::move(weights)) {
  if (weights_.rows.empty() || weights_.init.size() != weights_.rows.size())
    throw InvalidInput("LinearWeightsRule: empty or inconsistent weights");
  dim_ = weights_.init.front().size();
  if (weights_.obs_offset.size() == 0) weights_.obs_offset = Vector::Zero(dim_);
}

Vector LinearWeightsRule::forecast(const History& history) const {
  return weights_.reconstruct(static_cast<std::size_t>(history.rows()), history);
}

Predictor make_statespace_predictor(StateSpaceModel model, std::size_t memory, PredictorKind kind,
                                    std::string label) {
  return Predictor(kind, memory, std::make_shared<StateSpaceRule>(std::move(model)),
                   std::move(label));
}

}  // namespace tsbound
