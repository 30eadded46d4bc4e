#include "tsbound/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <iomanip>
#include <ostream>
#include <random>

#include "tsbound/bounds.hpp"
#include "tsbound/error.hpp"

namespace tsbound {

TimeSeries StateSpaceGenerator::simulate(std::size_t n, std::uint64_t seed) const {
  return simulate_statespace(model_, n, seed);
}

Vector StateSpaceGenerator::stationary_mean() const { return model_.obs_offset(); }

Matrix StateSpaceGenerator::stationary_cov() const {
  const Matrix p = stationary_covariance(model_.T(), model_.Q());
  return model_.Z() * p * model_.Z().transpose() + model_.H();
}

VarProcess::VarProcess(LinearFit coefficients, Matrix noise_cov, std::size_t burn_in)
    : fit_(std::move(coefficients)), noise_cov_(std::move(noise_cov)), burn_in_(burn_in) {
  const Eigen::Index k = fit_.dim();
  if (k < 1) throw InvalidInput("VarProcess: empty coefficients");
  if (noise_cov_.rows() != k || noise_cov_.cols() != k)
    throw InvalidInput("VarProcess: noise covariance must be k x k");
  for (const auto& a : fit_.lags)
    if (a.rows() != k || a.cols() != k) throw InvalidInput("VarProcess: lag matrix must be k x k");
  if (!fit_.lags.empty() && spectral_radius(companion()) >= 1.0)
    throw InvalidInput("VarProcess: coefficients are not stationary");
}

Matrix VarProcess::companion() const {
  const Eigen::Index k = fit_.dim();
  const auto d = static_cast<Eigen::Index>(fit_.lags.size());
  Matrix c = Matrix::Zero(k * d, k * d);
  for (Eigen::Index l = 0; l < d; ++l) c.block(0, l * k, k, k) = fit_.lags[static_cast<std::size_t>(l)];
  if (d > 1) c.block(k, 0, k * (d - 1), k * (d - 1)).setIdentity();
  return c;
}

Vector VarProcess::stationary_mean() const {
  const Eigen::Index k = fit_.dim();
  Matrix sum = Matrix::Identity(k, k);
  for (const auto& a : fit_.lags) sum -= a;
  return sum.partialPivLu().solve(fit_.intercept);
}

Matrix VarProcess::stationary_cov() const {
  const Eigen::Index k = fit_.dim();
  if (fit_.lags.empty()) return noise_cov_;
  const auto d = static_cast<Eigen::Index>(fit_.lags.size());
  Matrix q = Matrix::Zero(k * d, k * d);
  q.topLeftCorner(k, k) = noise_cov_;
  return stationary_covariance(companion(), q).topLeftCorner(k, k);
}

TimeSeries VarProcess::simulate(std::size_t n, std::uint64_t seed) const {
  if (n < 1) throw InvalidInput("VarProcess::simulate: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::Index k = fit_.dim();
  const Matrix root = psd_sqrt(noise_cov_);
  const std::size_t d = fit_.lags.size();
  const std::size_t total = n + (d > 0 ? burn_in_ : 0);
  const Vector mean = stationary_mean();

  Matrix path(static_cast<Eigen::Index>(total + d), k);
  for (std::size_t i = 0; i < d; ++i) path.row(static_cast<Eigen::Index>(i)) = mean.transpose();
  Vector z(k);
  for (std::size_t t = d; t < total + d; ++t) {
    Vector next = fit_.intercept;
    for (std::size_t l = 1; l <= d; ++l)
      next += fit_.lags[l - 1] * path.row(static_cast<Eigen::Index>(t - l)).transpose();
    for (Eigen::Index i = 0; i < k; ++i) z(i) = gauss(rng);
    path.row(static_cast<Eigen::Index>(t)) = (next + root * z).transpose();
  }
  return TimeSeries(path.bottomRows(static_cast<Eigen::Index>(n)), std::nullopt, "simulated-var");
}

std::shared_ptr<const Generator> iid_gaussian(double mean, double variance) {
  if (!(variance >= 0.0)) throw InvalidInput("iid_gaussian: variance must be nonnegative");
  LinearFit fit;
  fit.intercept = Vector::Constant(1, mean);
  return std::make_shared<VarProcess>(std::move(fit), Matrix::Constant(1, 1, variance), 0);
}

std::shared_ptr<const Generator> ar1_process(double phi, double sigma2) {
  if (!(std::abs(phi) < 1.0)) throw InvalidInput("ar1_process: need |phi| < 1");
  LinearFit fit;
  fit.intercept = Vector::Zero(1);
  fit.lags = {Matrix::Constant(1, 1, phi)};
  return std::make_shared<VarProcess>(std::move(fit), Matrix::Constant(1, 1, sigma2));
}

RiskEstimate estimate_true_risk(const Generator& process, const Predictor& predictor, std::size_t n,
                                const LossSpec& loss, std::size_t reps, std::uint64_t seed) {
  if (reps < 100) throw InvalidInput("estimate_true_risk: need reps >= 100");
  if (predictor.rule().output_dim() != process.dim())
    throw InvalidInput("estimate_true_risk: generator and predictor dimensions differ");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    const TimeSeries path = process.simulate(n + 1, seed + r);
    const Matrix& y = path.values();
    const Vector f = predictor.forecast(y.topRows(static_cast<Eigen::Index>(n)));
    const double l = loss(Vector(y.row(static_cast<Eigen::Index>(n)).transpose() - f));
    sum += l;
    sum_sq += l * l;
  }
  const double m = sum / static_cast<double>(reps);
  const double var = std::max(0.0, (sum_sq - static_cast<double>(reps) * m * m) /
                                       static_cast<double>(reps - 1));
  return {m, std::sqrt(var / static_cast<double>(reps))};
}

ModelClassFitter mean_class() {
  return {"mean", 0, 1, [](const TimeSeries& s) { return make_linear_predictor(fit_mean(s), "Mean"); }};
}

ModelClassFitter ar_class(std::size_t d, bool intercept) {
  return {"ar(" + std::to_string(d) + ")", d, static_cast<int>(d) + 1,
          [d, intercept](const TimeSeries& s) {
            return make_linear_predictor(fit_ar(s, d, intercept), "AR(" + std::to_string(d) + ")");
          }};
}

double gaussian_moment_bound(const LossSpec& loss, double mean, double variance, double inflation) {
  if (!(variance >= 0.0)) throw InvalidInput("gaussian_moment_bound: variance must be nonnegative");
  const double m2 = mean * mean;
  double second_moment_of_loss = 0.0;
  if (loss.kind() == LossKind::squared)
    second_moment_of_loss = m2 * m2 + 6.0 * m2 * variance + 3.0 * variance * variance;  // E[Y^4]
  else
    second_moment_of_loss = m2 + variance;  // E[Y^2]
  return inflation * std::sqrt(second_moment_of_loss);
}

double binomial_cdf(std::size_t k, std::size_t n, double p) {
  if (k >= n) return 1.0;
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  double total = 0.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  for (std::size_t i = 0; i <= k; ++i) {
    const double lc = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(i) + 1.0) -
                      std::lgamma(static_cast<double>(n - i) + 1.0);
    total += std::exp(lc + static_cast<double>(i) * lp + static_cast<double>(n - i) * lq);
  }
  return std::min(total, 1.0);
}

bool coverage_consistent(std::size_t covered, std::size_t reps, double nominal, double alpha) {
  return binomial_cdf(covered, reps, nominal) >= alpha;
}

CoverageResult coverage_experiment(const CoverageScenario& sc) {
  if (!sc.process) throw InvalidInput("coverage_experiment: missing process");
  if (sc.process->dim() != 1) throw InvalidInput("coverage_experiment: scalar processes only");
  if (sc.reps < 1) throw InvalidInput("coverage_experiment: reps must be >= 1");
  CoverageResult res;
  res.name = sc.name;
  res.reps = sc.reps;
  res.moment_m = gaussian_moment_bound(sc.loss, sc.process->stationary_mean()(0),
                                       sc.process->stationary_cov()(0, 0));
  const auto n = static_cast<long>(sc.n);
  const auto d = static_cast<long>(sc.model.memory);
  res.plan = choose_blocks(n, d, sc.profile, sc.eta, sc.model.vcd, res.moment_m, sc.variant);
  const PenaltyResult pen = corollary_penalty(res.plan, sc.model.vcd, sc.eta, res.moment_m, sc.variant);

  std::vector<double> bound(sc.reps);
  std::vector<double> risk(sc.reps);
  auto run_rep = [&](std::size_t r) {
    const std::uint64_t rep_seed = sc.seed + r;
    const TimeSeries sample = sc.process->simulate(sc.n, rep_seed);
    const Predictor f = sc.model.fit(sample);
    bound[r] = training_error(sample, f, sc.model.memory, sc.loss) + pen.eps;
    // Fresh paths for the risk oracle live in a disjoint seed range.
    risk[r] = estimate_true_risk(*sc.process, f, sc.n, sc.loss, sc.risk_reps,
                                 (rep_seed + 1) * 1000003ULL)
                  .mean;
  };

  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, sc.reps);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < sc.reps; r = next++) {
          try {
            run_rep(r);
          } catch (...) {
            const std::lock_guard<std::mutex> hold(failure_lock);
            if (!failure) failure = std::current_exception();
            next = sc.reps;
          }
        }
      });
  }
  if (failure) std::rethrow_exception(failure);

  double slack = 0.0;
  for (std::size_t r = 0; r < sc.reps; ++r) {
    if (risk[r] <= bound[r]) ++res.covered;
    slack += bound[r] - risk[r];
  }
  res.coverage = static_cast<double>(res.covered) / static_cast<double>(sc.reps);
  res.mean_slack = slack / static_cast<double>(sc.reps);
  res.p_value = binomial_cdf(res.covered, sc.reps, 1.0 - sc.eta);
  return res;
}

void write_coverage_csv(std::ostream& out, const std::vector<CoverageResult>& results) {
  const auto old = out.precision(6);
  out << "scenario,reps,coverage,mean_slack,covered,M,mu,a,p_value\n";
  for (const auto& r : results)
    out << r.name << ',' << r.reps << ',' << r.coverage << ',' << r.mean_slack << ',' << r.covered
        << ',' << r.moment_m << ',' << r.plan.mu << ',' << r.plan.a << ',' << r.p_value << '\n';
  out.precision(old);
}

}  // namespace tsbound
