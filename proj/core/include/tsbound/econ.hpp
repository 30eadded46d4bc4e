#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tsbound/linalg.hpp"
#include "tsbound/optimize.hpp"
#include "tsbound/series.hpp"
#include "tsbound/statespace.hpp"

namespace tsbound {

// ---- Data preparation -------------------------------------------------------------------

struct FredInputs {
  TimeSeries pcesvc96;  // real PCE: services
  TimeSeries pcndgc96;  // real PCE: nondurable goods
  TimeSeries gdpic1;    // real gross domestic investment
  TimeSeries hoanbs;    // nonfarm business hours
  TimeSeries cnp16ov;   // civilian noninstitutional population
};

struct MacroSeries {
  TimeSeries consumption;
  TimeSeries investment;
  TimeSeries output;
  TimeSeries hours;
};

/// Per-capita transforms: c = 2.5e5 (PCESVC96 + PCNDGC96) / CNP16OV, i = 2.5e5 GDPIC1 / CNP16OV,
/// y = c + i, h = 6000 HOANBS / CNP16OV. Inputs must be scalar, equally long, and share an
/// index when they carry one. Zero population entries throw.
MacroSeries fred_transform(const FredInputs& in);

/// Reads a FRED download: header "DATE,<SERIES_ID>" then one observation per row.
TimeSeries read_fred_csv_file(const std::string& path);

/// Hodrick-Prescott trend: argmin_z sum (x_t - z_t)^2 + lambda sum (z_{t+1} - 2 z_t + z_{t-1})^2,
/// solved through a banded Cholesky factorization of (I + lambda D'D), O(n).
std::vector<double> hp_filter(const std::vector<double>& series, double lambda = 1600.0);

/// Column-wise HP trend.
TimeSeries hp_filter(const TimeSeries& series, double lambda = 1600.0);

/// log(raw) - log(trend), elementwise. Both must be strictly positive.
TimeSeries detrend(const TimeSeries& raw, const TimeSeries& trend);

// ---- Penalized maximum likelihood -------------------------------------------------------

struct ParameterPrior {
  std::string name;
  double lower = -1e300;
  double upper = 1e300;
  /// Gaussian prior; absent means box-only.
  std::optional<double> mean;
  std::optional<double> variance;
};

struct PriorSpec {
  std::vector<ParameterPrior> params;

  /// Checks lower < upper and variance > 0 where present.
  void validate() const;
  Box box() const;
  /// sum_j (theta_j - m_j)^2 / (2 v_j) over parameters with a prior.
  double penalty(const Vector& theta) const;
};

using ModelBuilder = std::function<StateSpaceModel(const Vector& theta)>;

struct MleResult {
  Vector theta;
  /// Kalman negative log-likelihood plus prior penalty at theta.
  double objective = 0.0;
  double neg_loglik = 0.0;
  double initial_objective = 0.0;
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
};

/// Minimizes kalman neg-loglik + prior penalty over the prior boxes by box-constrained simplex
/// search. A builder that throws (e.g. nonstationary T) or a singular filter rejects the point.
/// The initial point must lie inside the boxes.
MleResult penalized_mle(const ModelBuilder& builder, const TimeSeries& data,
                        const PriorSpec& priors, const Vector& init,
                        const SimplexOptions& options = {});

/// VAR(1) written as a state-space model: Z = I, T = A, Q = diag(q), H = diag(h) (or 0),
/// a1 = 0, P1 = stationary covariance. theta = (A row-major, q, [h]).
ModelBuilder var1_statespace_builder(int k, bool observation_noise = false);

/// Boxes for var1_statespace_builder: A entries in [-0.999, 0.999], variances in [1e-8, 1e3]
/// (observation variances may reach 0). No Gaussian priors.
PriorSpec var1_default_priors(int k, bool observation_noise = false);

}  // namespace tsbound
