#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tsbound/linalg.hpp"
#include "tsbound/mixing.hpp"
#include "tsbound/penalty.hpp"

namespace tsbound {

/// Largest normalized deviation for which the Lambert-W exponent is defined: sqrt(e^3 / 2).
double max_normalized_eps();

/// exp(W_{-1}(-2 eps^2 / e^4) + 4), for eps in (0, sqrt(e^3/2)].
double exact_exponent(double eps);

/// eps^{8/3} / 4^{2/3}: a closed-form lower bound on exact_exponent over (0, 1], which makes
/// the resulting tail bound slightly looser.
double simplified_exponent(double eps);

enum class TailExponent { exact, simplified };

struct TailProbability {
  /// Bound on P(sup (R - R_hat)/Q > eps). May exceed 1.
  double value = 0.0;
  /// log(value), kept separately because value overflows for large vcd.
  double log_value = 0.0;
  bool trivial = false;
};

/// 8 (2mu+1)^vcd exp(-mu g(eps) / 4) + 2 mu beta, where g is the chosen exponent.
TailProbability theorem1_rhs(double eps, long mu, int vcd, double beta_gap,
                             TailExponent exponent = TailExponent::exact);

struct PenaltyResult {
  /// M sqrt(E (4 - log E) / 2), or the saturation value M sqrt(e^3/2) when trivial.
  double eps = 0.0;
  double capacity_e = 0.0;
  double eta_prime = 0.0;
  bool trivial = false;
};

/// Deviation term of the high-probability risk bound. Throws Infeasible when eta' <= 0.
PenaltyResult corollary_penalty(const BlockingPlan& plan, int vcd, double eta, double moment_m,
                                PenaltyVariant variant = PenaltyVariant::as_printed);

struct BoundInputs {
  BlockingPlan plan;
  int vcd = 1;
  double eta = 0.15;
  double moment_m = 1.0;
  double train_err = 0.0;
  double delta_d = 0.0;
};

struct BoundReport {
  double train_err = 0.0;
  double delta_d = 0.0;
  double penalty_eps = 0.0;
  double total_bound = 0.0;
  double eta = 0.0;
  double eta_prime = 0.0;
  double moment_m = 0.0;
  BlockingPlan plan;
  int vcd = 0;
  double capacity_e = 0.0;
  PenaltyVariant variant = PenaltyVariant::as_printed;
  /// The penalty saturated: the bound holds but carries no information.
  bool trivial = false;
};

/// total = train_err + delta_d + penalty.
BoundReport risk_bound(const BoundInputs& inputs,
                       PenaltyVariant variant = PenaltyVariant::as_printed);

/// Aligned key/value text, six significant digits.
void print_report(std::ostream& out, const BoundReport& report);
void write_report_csv(std::ostream& out, const std::vector<BoundReport>& reports,
                      const std::vector<std::string>& labels = {});

/// IID concentration for a loss bounded by K: 2 exp(-2 n eps^2 / K^2).
double hoeffding_bound(long n, double eps, double bound_k);

/// IID VC deviation: K1 sqrt((vcd log(2n+1) + log(4/eta)) / n).
double iid_vc_bound(long n, int vcd, double eta, double k1);

/// Bounded-loss blocked bound: 8 (2mu+1)^vcd exp(-mu eps^2 / K1^2) + 2 mu beta.
double bounded_beta_bound(double eps, long mu, int vcd, double k1, double beta_gap);

struct OracleRates {
  double lower = 0.0;
  double upper = 0.0;
  /// a_n = n^{1/(1+kappa)}
  double block_length = 0.0;
  /// mu_n = n^{kappa/(1+kappa)}
  double block_count = 0.0;
};

/// Oracle-loss rates under exponential mixing: c sqrt(vcd/n) and
/// C sqrt(vcd log n / n^{kappa/(1+kappa)}).
OracleRates oracle_rates(long n, int vcd, double kappa, double c, double big_c);

struct TradeoffGrid {
  std::vector<long> mu;
  std::vector<double> eps;
  /// log(min(RHS, 1)); rows follow eps, columns follow mu.
  Matrix log_prob;
  /// Per mu, the smallest eps with RHS <= 1; NaN when no eps in the domain qualifies.
  std::vector<double> boundary;
};

TradeoffGrid tradeoff_grid(const std::vector<long>& mu, const std::vector<double>& eps, int vcd,
                           double beta_gap, TailExponent exponent = TailExponent::exact);

/// Long format: mu,eps,log_prob.
void write_tradeoff_csv(std::ostream& out, const TradeoffGrid& grid);
/// mu,eps_boundary (rows without a boundary are omitted).
void write_boundary_csv(std::ostream& out, const TradeoffGrid& grid);

}  // namespace tsbound
