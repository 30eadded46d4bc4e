#pragma once

#include <cstddef>
#include <cstdint>

#include "tsbound/econ.hpp"
#include "tsbound/optimize.hpp"
#include "tsbound/predictor.hpp"
#include "tsbound/series.hpp"
#include "tsbound/statespace.hpp"

namespace tsbound {

/// Linearized stochastic volatility:
///   log y_t^2 = kappa + rho_t / 2 + xi_t,   Var(xi_t) = pi^2 / 2
///   rho_{t+1} = phi rho_t + w_t,            Var(w_t) = sigma_w2
struct SvParams {
  double kappa = -9.0;
  double phi = 0.95;
  double sigma_w2 = 0.05;

  void validate() const;
};

struct LinearizedReturns {
  TimeSeries log_squared;
  std::size_t dropped_zeros = 0;
};

/// Drops exact zero returns and maps the rest to log y^2. Throws when nothing survives.
LinearizedReturns linearize_returns(const TimeSeries& returns);

/// log(p_t / p_{t-1}) for t = 2..n.
TimeSeries log_returns_from_prices(const TimeSeries& prices);

/// Scalar state rho: T = phi, Q = sigma_w2, Z = 1/2, H = pi^2/2, obs offset kappa, a1 = 0,
/// P1 = sigma_w2 / (1 - phi^2). Throws for |phi| >= 1.
StateSpaceModel sv_to_statespace(const SvParams& params);

/// theta = (kappa, phi, sigma_w2).
ModelBuilder sv_builder();

/// Boxes: kappa in [-50, 50], |phi| <= 1 - 1e-6, sigma_w2 in [1e-12, 100]. No Gaussian priors.
PriorSpec sv_box_priors();

struct SvFit {
  SvParams params;
  double neg_loglik = 0.0;
  double initial_neg_loglik = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Quasi-maximum likelihood through the Kalman filter. An init outside the boxes is projected
/// into them first.
SvFit fit_sv(const TimeSeries& transformed, const SvParams& init, const SimplexOptions& options = {});

/// Predictor on the log y^2 scale with truncation depth d.
Predictor make_sv_predictor(const SvParams& params, std::size_t memory);

/// Returns whose log-squares follow the linearized model exactly: y_t = sigma z_t exp(rho_t / 4)
/// with z_t ~ N(0,1), sigma^2 = exp(kappa - E[log z^2]) and rho the AR(1) state above.
TimeSeries simulate_sv_returns(const SvParams& params, std::size_t n, std::uint64_t seed);

}  // namespace tsbound
