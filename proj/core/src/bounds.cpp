#include "tsbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

#include "tsbound/error.hpp"
#include "tsbound/lambert.hpp"

namespace tsbound {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double e_cubed() { return std::exp(3.0); }

// log(exp(a) + exp(b)) with -inf handled.
double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

void require_blocks(long mu, int vcd) {
  if (mu < 1) throw InvalidInput("block count mu must be >= 1");
  if (vcd < 0) throw InvalidInput("VC dimension must be >= 0");
}

// E for given mu, vcd, eta'.
double capacity_term(long mu, int vcd, double eta_prime, PenaltyVariant variant) {
  const double mu_d = static_cast<double>(mu);
  const double log_conf = std::log(8.0 / eta_prime);
  const double conf_weight = variant == PenaltyVariant::exact_inversion ? 4.0 : 1.0;
  return (4.0 * vcd * std::log(2.0 * mu_d + 1.0) + conf_weight * log_conf) / mu_d;
}

// eps with E(4 - log E)/2 = eps^2, valid for E <= e^3.
double invert_capacity(double capacity_e) {
  return std::sqrt(capacity_e * (4.0 - std::log(capacity_e)) / 2.0);
}

}  // namespace

PenaltyVariant parse_penalty_variant(std::string_view name) {
  if (name == "as-printed" || name == "as_printed") return PenaltyVariant::as_printed;
  if (name == "exact-inversion" || name == "exact_inversion") return PenaltyVariant::exact_inversion;
  throw InvalidInput("unknown penalty variant '" + std::string(name) + "'");
}

std::string_view to_string(PenaltyVariant v) {
  return v == PenaltyVariant::as_printed ? "as-printed" : "exact-inversion";
}

double max_normalized_eps() { return std::sqrt(e_cubed() / 2.0); }

double exact_exponent(double eps) {
  if (!(eps > 0.0)) throw InvalidInput("exact_exponent: eps must be positive");
  if (eps > max_normalized_eps() * (1.0 + 1e-15))
    throw InvalidInput("exact_exponent: eps exceeds sqrt(e^3/2), outside the W_{-1} domain");
  const double e4 = std::exp(4.0);
  const double x = std::max(-2.0 * eps * eps / e4, -1.0 / std::numbers::e);
  if (x == 0.0) return 0.0;
  // w e^w = x, so exp(w + 4) = e^4 x / w without underflow in exp(w).
  const double w = lambert_w_minus1(x);
  return e4 * x / w;
}

double simplified_exponent(double eps) {
  if (eps < 0.0) throw InvalidInput("simplified_exponent: eps must be nonnegative");
  return std::pow(eps, 8.0 / 3.0) / std::pow(4.0, 2.0 / 3.0);
}

TailProbability theorem1_rhs(double eps, long mu, int vcd, double beta_gap,
                             TailExponent exponent) {
  require_blocks(mu, vcd);
  if (beta_gap < 0.0 || beta_gap > 1.0) throw InvalidInput("beta must lie in [0, 1]");
  if (!(eps > 0.0)) throw InvalidInput("theorem1_rhs: eps must be positive");
  const double g =
      exponent == TailExponent::exact ? exact_exponent(eps) : simplified_exponent(eps);
  const double mu_d = static_cast<double>(mu);
  const double log_vc = std::log(8.0) + vcd * std::log(2.0 * mu_d + 1.0) - mu_d * g / 4.0;
  const double mix = 2.0 * mu_d * beta_gap;
  TailProbability out;
  out.log_value = log_add(log_vc, mix > 0.0 ? std::log(mix) : -std::numeric_limits<double>::infinity());
  out.value = std::exp(out.log_value);
  out.trivial = out.log_value >= 0.0;
  return out;
}

PenaltyResult corollary_penalty(const BlockingPlan& plan, int vcd, double eta, double moment_m,
                                PenaltyVariant variant) {
  plan.validate();
  if (vcd < 0) throw InvalidInput("VC dimension must be >= 0");
  if (!(moment_m > 0.0)) throw InvalidInput("moment bound M must be positive");
  PenaltyResult out;
  out.eta_prime = effective_eta(eta, plan.mu, plan.beta_gap);
  out.capacity_e = capacity_term(plan.mu, vcd, out.eta_prime, variant);
  if (out.capacity_e > e_cubed()) {
    out.trivial = true;
    out.eps = moment_m * max_normalized_eps();
  } else {
    out.eps = moment_m * invert_capacity(out.capacity_e);
  }
  return out;
}

BoundReport risk_bound(const BoundInputs& in, PenaltyVariant variant) {
  if (in.train_err < 0.0 || in.delta_d < 0.0)
    throw InvalidInput("risk_bound: training error and delta_d must be nonnegative");
  const PenaltyResult pen = corollary_penalty(in.plan, in.vcd, in.eta, in.moment_m, variant);
  BoundReport r;
  r.train_err = in.train_err;
  r.delta_d = in.delta_d;
  r.penalty_eps = pen.eps;
  r.total_bound = in.train_err + in.delta_d + pen.eps;
  r.eta = in.eta;
  r.eta_prime = pen.eta_prime;
  r.moment_m = in.moment_m;
  r.plan = in.plan;
  r.vcd = in.vcd;
  r.capacity_e = pen.capacity_e;
  r.variant = variant;
  r.trivial = pen.trivial;
  return r;
}

void print_report(std::ostream& out, const BoundReport& r) {
  const auto old_flags = out.flags();
  const auto old_prec = out.precision(6);
  out.unsetf(std::ios::floatfield);
  auto line = [&](const char* key, auto value) {
    out << std::left << std::setw(16) << key << value << '\n';
  };
  line("train_err", r.train_err);
  line("delta_d", r.delta_d);
  line("penalty", r.penalty_eps);
  line("total_bound", r.total_bound);
  line("confidence", 1.0 - r.eta);
  line("eta", r.eta);
  line("eta_prime", r.eta_prime);
  line("capacity_E", r.capacity_e);
  line("vcd", r.vcd);
  line("moment_M", r.moment_m);
  line("mu", r.plan.mu);
  line("a", r.plan.a);
  line("d", r.plan.d);
  line("n", r.plan.n);
  line("beta_gap", r.plan.beta_gap);
  line("variant", to_string(r.variant));
  line("trivial", r.trivial ? "yes" : "no");
  out.flags(old_flags);
  out.precision(old_prec);
}

void write_report_csv(std::ostream& out, const std::vector<BoundReport>& reports,
                      const std::vector<std::string>& labels) {
  const auto old_prec = out.precision(6);
  out << "model,train_err,delta_d,penalty,total_bound,eta,eta_prime,capacity_E,vcd,M,mu,a,d,n,"
         "beta_gap,variant,trivial\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << (i < labels.size() ? labels[i] : std::string{}) << ',' << r.train_err << ','
        << r.delta_d << ',' << r.penalty_eps << ',' << r.total_bound << ',' << r.eta << ','
        << r.eta_prime << ',' << r.capacity_e << ',' << r.vcd << ',' << r.moment_m << ','
        << r.plan.mu << ',' << r.plan.a << ',' << r.plan.d << ',' << r.plan.n << ','
        << r.plan.beta_gap << ',' << to_string(r.variant) << ',' << (r.trivial ? 1 : 0) << '\n';
  }
  out.precision(old_prec);
}

double hoeffding_bound(long n, double eps, double bound_k) {
  if (n < 1 || !(eps > 0.0) || !(bound_k > 0.0))
    throw InvalidInput("hoeffding_bound: need n >= 1, eps > 0, K > 0");
  return 2.0 * std::exp(-2.0 * static_cast<double>(n) * eps * eps / (bound_k * bound_k));
}

double iid_vc_bound(long n, int vcd, double eta, double k1) {
  if (n < 1 || vcd < 0 || !(eta > 0.0 && eta < 4.0) || !(k1 > 0.0))
    throw InvalidInput("iid_vc_bound: need n >= 1, finite vcd, eta in (0,4), K1 > 0");
  const double nd = static_cast<double>(n);
  return k1 * std::sqrt((vcd * std::log(2.0 * nd + 1.0) + std::log(4.0 / eta)) / nd);
}

double bounded_beta_bound(double eps, long mu, int vcd, double k1, double beta_gap) {
  require_blocks(mu, vcd);
  if (!(eps > 0.0) || !(k1 > 0.0) || beta_gap < 0.0)
    throw InvalidInput("bounded_beta_bound: need eps > 0, K1 > 0, beta >= 0");
  const double mu_d = static_cast<double>(mu);
  const double log_vc = std::log(8.0) + vcd * std::log(2.0 * mu_d + 1.0) - mu_d * eps * eps / (k1 * k1);
  return std::exp(log_vc) + 2.0 * mu_d * beta_gap;
}

OracleRates oracle_rates(long n, int vcd, double kappa, double c, double big_c) {
  if (n < 2 || vcd < 0 || !(kappa > 0.0) || !(c > 0.0) || !(big_c > 0.0))
    throw InvalidInput("oracle_rates: need n >= 2, kappa > 0, c > 0, C > 0");
  const double nd = static_cast<double>(n);
  OracleRates r;
  r.block_length = std::pow(nd, 1.0 / (1.0 + kappa));
  r.block_count = std::pow(nd, kappa / (1.0 + kappa));
  r.lower = c * std::sqrt(vcd / nd);
  r.upper = big_c * std::sqrt(vcd * std::log(nd) / r.block_count);
  return r;
}

TradeoffGrid tradeoff_grid(const std::vector<long>& mu, const std::vector<double>& eps, int vcd,
                           double beta_gap, TailExponent exponent) {
  if (mu.empty() || eps.empty()) throw InvalidInput("tradeoff_grid: empty range");
  TradeoffGrid g;
  g.mu = mu;
  g.eps = eps;
  g.log_prob.resize(static_cast<Eigen::Index>(eps.size()), static_cast<Eigen::Index>(mu.size()));
  g.boundary.assign(mu.size(), kNaN);
  for (std::size_t j = 0; j < mu.size(); ++j) {
    for (std::size_t i = 0; i < eps.size(); ++i) {
      const auto t = theorem1_rhs(eps[i], mu[j], vcd, beta_gap, exponent);
      g.log_prob(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::min(t.log_value, 0.0);
    }
    // RHS = 1 solved for eps: the exponent must reach 4 (log 8 + vcd log(2mu+1) - log(1 - 2 mu beta)) / mu.
    const double mu_d = static_cast<double>(mu[j]);
    const double slack = 1.0 - 2.0 * mu_d * beta_gap;
    if (slack <= 0.0) continue;
    const double g_star =
        4.0 * (std::log(8.0) + vcd * std::log(2.0 * mu_d + 1.0) - std::log(slack)) / mu_d;
    if (exponent == TailExponent::exact) {
      if (g_star <= e_cubed()) g.boundary[j] = invert_capacity(g_star);
    } else {
      const double e_b = std::pow(g_star * std::pow(4.0, 2.0 / 3.0), 3.0 / 8.0);
      if (e_b <= 1.0) g.boundary[j] = e_b;
    }
  }
  return g;
}

void write_tradeoff_csv(std::ostream& out, const TradeoffGrid& g) {
  const auto old_prec = out.precision(6);
  out << "mu,eps,log_prob\n";
  for (std::size_t j = 0; j < g.mu.size(); ++j)
    for (std::size_t i = 0; i < g.eps.size(); ++i)
      out << g.mu[j] << ',' << g.eps[i] << ','
          << g.log_prob(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) << '\n';
  out.precision(old_prec);
}

void write_boundary_csv(std::ostream& out, const TradeoffGrid& g) {
  const auto old_prec = out.precision(6);
  out << "mu,eps_boundary\n";
  for (std::size_t j = 0; j < g.mu.size(); ++j)
    if (!std::isnan(g.boundary[j])) out << g.mu[j] << ',' << g.boundary[j] << '\n';
  out.precision(old_prec);
}

}  // namespace tsbound
