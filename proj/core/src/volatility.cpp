#include "tsbound/volatility.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "tsbound/error.hpp"

namespace tsbound {

namespace {

// E[log z^2] for z ~ N(0,1): digamma(1/2) + log 2.
constexpr double kMeanLogChiSq1 = -1.2703628454614782;
constexpr double kPhiLimit = 1.0 - 1e-6;

}  // namespace

void SvParams::validate() const {
  if (!std::isfinite(kappa)) throw InvalidInput("SV: kappa must be finite");
  if (!(std::abs(phi) < 1.0)) throw InvalidInput("SV: |phi| must be < 1 for stationarity");
  if (!(sigma_w2 > 0.0)) throw InvalidInput("SV: sigma_w2 must be positive");
}

LinearizedReturns linearize_returns(const TimeSeries& returns) {
  if (returns.dim() != 1) throw InvalidInput("linearize_returns: expected a scalar series");
  std::vector<double> kept;
  std::vector<std::string> kept_index;
  kept.reserve(returns.size());
  const auto& idx = returns.index();
  std::size_t dropped = 0;
  for (std::size_t t = 0; t < returns.size(); ++t) {
    const double r = returns.values()(static_cast<Eigen::Index>(t), 0);
    if (r == 0.0) {
      ++dropped;
      continue;
    }
    kept.push_back(std::log(r * r));
    if (idx) kept_index.push_back((*idx)[t]);
  }
  if (kept.empty()) throw InvalidInput("linearize_returns: every return is zero");
  Matrix m = Eigen::Map<const Vector>(kept.data(), static_cast<Eigen::Index>(kept.size()));
  std::optional<std::vector<std::string>> new_idx;
  if (idx) new_idx = std::move(kept_index);
  TimeSeries out(std::move(m), std::move(new_idx), returns.name());
  out.set_column_names({"log_y2"});
  return {std::move(out), dropped};
}

TimeSeries log_returns_from_prices(const TimeSeries& prices) {
  if (prices.dim() != 1 || prices.size() < 2)
    throw InvalidInput("log_returns_from_prices: need a scalar series with >= 2 prices");
  const auto& p = prices.values();
  if ((p.array() <= 0.0).any()) throw InvalidInput("log_returns_from_prices: prices must be positive");
  const Eigen::Index n = p.rows();
  Matrix r = (p.bottomRows(n - 1).array().log() - p.topRows(n - 1).array().log()).matrix();
  std::optional<std::vector<std::string>> idx;
  if (prices.index()) idx.emplace(prices.index()->begin() + 1, prices.index()->end());
  TimeSeries out(std::move(r), std::move(idx), prices.name());
  out.set_column_names({"log_return"});
  return out;
}

StateSpaceModel sv_to_statespace(const SvParams& params) {
  params.validate();
  const double p1 = params.sigma_w2 / (1.0 - params.phi * params.phi);
  return StateSpaceModel(Matrix::Constant(1, 1, 0.5), Matrix::Constant(1, 1, params.phi),
                         Matrix::Constant(1, 1, std::numbers::pi * std::numbers::pi / 2.0),
                         Matrix::Constant(1, 1, params.sigma_w2), Vector::Zero(1),
                         Matrix::Constant(1, 1, p1), Vector::Constant(1, params.kappa));
}

ModelBuilder sv_builder() {
  return [](const Vector& theta) {
    if (theta.size() != 3) throw InvalidInput("SV builder expects (kappa, phi, sigma_w2)");
    return sv_to_statespace(SvParams{theta(0), theta(1), theta(2)});
  };
}

PriorSpec sv_box_priors() {
  PriorSpec spec;
  spec.params = {
      {"kappa", -50.0, 50.0, std::nullopt, std::nullopt},
      {"phi", -kPhiLimit, kPhiLimit, std::nullopt, std::nullopt},
      {"sigma_w2", 1e-12, 100.0, std::nullopt, std::nullopt},
  };
  return spec;
}

SvFit fit_sv(const TimeSeries& transformed, const SvParams& init, const SimplexOptions& options) {
  if (transformed.dim() != 1) throw InvalidInput("fit_sv: expected a scalar series");
  const PriorSpec priors = sv_box_priors();
  const Vector start = priors.box().project(Vector{{init.kappa, init.phi, init.sigma_w2}});
  const MleResult mle = penalized_mle(sv_builder(), transformed, priors, start, options);
  SvFit fit;
  fit.params = {mle.theta(0), mle.theta(1), mle.theta(2)};
  fit.neg_loglik = mle.neg_loglik;
  fit.initial_neg_loglik = mle.initial_objective;
  fit.converged = mle.converged;
  fit.iterations = mle.iterations;
  return fit;
}

Predictor make_sv_predictor(const SvParams& params, std::size_t memory) {
  return make_statespace_predictor(sv_to_statespace(params), memory, PredictorKind::sv, "SV");
}

TimeSeries simulate_sv_returns(const SvParams& params, std::size_t n, std::uint64_t seed) {
  params.validate();
  if (n < 1) throw InvalidInput("simulate_sv_returns: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double sigma = std::exp(0.5 * (params.kappa - kMeanLogChiSq1));
  const double sw = std::sqrt(params.sigma_w2);
  double rho = std::sqrt(params.sigma_w2 / (1.0 - params.phi * params.phi)) * gauss(rng);
  Matrix y(static_cast<Eigen::Index>(n), 1);
  for (std::size_t t = 0; t < n; ++t) {
    y(static_cast<Eigen::Index>(t), 0) = sigma * gauss(rng) * std::exp(rho / 4.0);
    rho = params.phi * rho + sw * gauss(rng);
  }
  return TimeSeries(std::move(y), std::nullopt, "simulated-sv");
}

}  // namespace tsbound
