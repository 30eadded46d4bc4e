#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "tsbound/forecasters.hpp"
#include "tsbound/loss.hpp"
#include "tsbound/mixing.hpp"
#include "tsbound/penalty.hpp"
#include "tsbound/predictor.hpp"
#include "tsbound/statespace.hpp"

namespace tsbound {

/// A data-generating process that can draw fresh sample paths.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual TimeSeries simulate(std::size_t n, std::uint64_t seed) const = 0;
  virtual Eigen::Index dim() const = 0;
  /// Stationary mean and covariance of Y_t.
  virtual Vector stationary_mean() const = 0;
  virtual Matrix stationary_cov() const = 0;
};

class StateSpaceGenerator : public Generator {
 public:
  explicit StateSpaceGenerator(StateSpaceModel model) : model_(std::move(model)) {}
  TimeSeries simulate(std::size_t n, std::uint64_t seed) const override;
  Eigen::Index dim() const override { return model_.obs_dim(); }
  Vector stationary_mean() const override;
  Matrix stationary_cov() const override;

 private:
  StateSpaceModel model_;
};

/// Gaussian VAR(d) process Y_{t+1} = c + sum A_l Y_{t+1-l} + e, e ~ N(0, noise_cov).
/// Paths start from a burn-in of `burn_in` steps at the stationary mean.
class VarProcess : public Generator {
 public:
  VarProcess(LinearFit coefficients, Matrix noise_cov, std::size_t burn_in = 500);
  TimeSeries simulate(std::size_t n, std::uint64_t seed) const override;
  Eigen::Index dim() const override { return fit_.dim(); }
  Vector stationary_mean() const override;
  Matrix stationary_cov() const override;

 private:
  Matrix companion() const;

  LinearFit fit_;
  Matrix noise_cov_;
  std::size_t burn_in_;
};

/// IID N(mean, variance) scalars.
std::shared_ptr<const Generator> iid_gaussian(double mean, double variance);
/// Scalar AR(1): Y_{t+1} = phi Y_t + e, e ~ N(0, sigma2).
std::shared_ptr<const Generator> ar1_process(double phi, double sigma2);

struct RiskEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Average of l(Y_{n+1} - f(Y_1..Y_n)) over `reps` fresh paths (rep r uses seed + r).
/// Requires reps >= 100.
RiskEstimate estimate_true_risk(const Generator& process, const Predictor& predictor, std::size_t n,
                                const LossSpec& loss, std::size_t reps, std::uint64_t seed);

/// Empirical-risk-minimizing fitter for a model class of fixed memory.
struct ModelClassFitter {
  std::string name;
  std::size_t memory = 0;
  int vcd = 1;
  std::function<Predictor(const TimeSeries&)> fit;
};

ModelClassFitter mean_class();
ModelClassFitter ar_class(std::size_t d, bool intercept = true);

/// sqrt(E[l(Y)^2]) for a scalar Gaussian Y, times `inflation`. Used as the moment bound M.
double gaussian_moment_bound(const LossSpec& loss, double mean, double variance,
                             double inflation = 1.1);

struct CoverageScenario {
  std::string name;
  std::shared_ptr<const Generator> process;
  ModelClassFitter model;
  LossSpec loss = LossSpec::squared();
  double eta = 0.15;
  MixingProfile profile = MixingProfile::independent();
  std::size_t n = 500;
  std::size_t reps = 500;
  std::size_t risk_reps = 100;
  std::uint64_t seed = 1;
  PenaltyVariant variant = PenaltyVariant::as_printed;
};

struct CoverageResult {
  std::string name;
  std::size_t reps = 0;
  std::size_t covered = 0;
  double coverage = 0.0;
  /// Mean of (bound - true risk) over reps.
  double mean_slack = 0.0;
  double moment_m = 0.0;
  BlockingPlan plan;
  /// One-sided binomial p-value of the observed count under coverage = 1 - eta.
  double p_value = 1.0;
};

/// Per rep: simulate, fit, bound, estimate the fitted predictor's true risk; coverage is the
/// fraction of reps with risk <= bound. Throws Infeasible when no blocking plan exists.
CoverageResult coverage_experiment(const CoverageScenario& scenario);

/// P(X <= k) for X ~ Binomial(n, p).
double binomial_cdf(std::size_t k, std::size_t n, double p);

/// True unless the observed count is significantly below nominal (one-sided, level alpha).
bool coverage_consistent(std::size_t covered, std::size_t reps, double nominal, double alpha = 0.01);

void write_coverage_csv(std::ostream& out, const std::vector<CoverageResult>& results);

}  // namespace tsbound
