#pragma once

// Reference computations for tests. Each one takes a deliberately different route from the
// library: bisection instead of Halley, dense covariance instead of recursions, dense
// solves instead of banded factorizations.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tsbound/mixing.hpp"
#include "tsbound/penalty.hpp"
#include "tsbound/statespace.hpp"

namespace oracle {

/// W_{-1}(x) by bisection in long double.
double lambert_w_minus1(double x);

/// exp(W_{-1}(-2 eps^2/e^4) + 4) using the bisection root.
double exact_exponent(double eps);

/// 8 (2mu+1)^vcd exp(-mu g / 4) + 2 mu beta with the bisection exponent, in long double.
double tail_rhs(double eps, long mu, int vcd, double beta);

/// Capacity term and penalty written out directly from the closed forms.
double capacity_e(long mu, int vcd, double eta_prime, tsbound::PenaltyVariant variant);
double penalty(long mu, int vcd, double eta_prime, double moment_m,
               tsbound::PenaltyVariant variant);

/// Scans a = d+1..(n-d)/2 with mu = (n-d)/(2a) and returns (a, mu, penalty) of the best plan.
struct PlanChoice {
  long a = 0;
  long mu = 0;
  double penalty = 0.0;
};
PlanChoice best_plan(long n, long d, const tsbound::MixingProfile& profile, double eta, int vcd,
                     double moment_m, tsbound::PenaltyVariant variant);

/// 1/2 [log det Sigma + r' Sigma^{-1} r] for the stacked observation vector.
double dense_neg_loglik(const tsbound::StateSpaceModel& model, const Eigen::MatrixXd& y);

/// HP trend by a dense solve of (I + lambda D'D) z = x.
std::vector<double> dense_hp(const std::vector<double>& x, double lambda);

/// Random stable model with the given dimensions (spectral radius of T at most 0.9).
tsbound::StateSpaceModel random_model(int obs_dim, int state_dim, std::uint64_t seed);

}  // namespace oracle
