#include "tsbound/econ.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tsbound/error.hpp"

namespace tsbound {

namespace {

void require_aligned(const TimeSeries& a, const TimeSeries& b, const char* name) {
  if (a.dim() != 1 || b.dim() != 1) throw InvalidInput(std::string("fred_transform: ") + name + " must be scalar");
  if (a.size() != b.size())
    throw InvalidInput(std::string("fred_transform: ") + name + " length differs from CNP16OV");
  if (a.index() && b.index() && *a.index() != *b.index())
    throw InvalidInput(std::string("fred_transform: ") + name + " dates are not aligned with CNP16OV");
}

TimeSeries named(Matrix v, const std::optional<std::vector<std::string>>& idx, const char* name) {
  TimeSeries ts(std::move(v), idx, name);
  ts.set_column_names({name});
  return ts;
}

// Solves (I + lambda D'D) z = x where D is the (n-2) x n second-difference operator.
// Bands: diag, sub1, sub2 of the symmetric pentadiagonal matrix.
struct Pentadiagonal {
  std::vector<double> diag, sub1, sub2;

  Pentadiagonal(std::size_t n, double lambda) : diag(n, 1.0), sub1(n, 0.0), sub2(n, 0.0) {
    // Row r of D has (1, -2, 1) at columns r, r+1, r+2; accumulate lambda * D'D.
    const double c[3] = {1.0, -2.0, 1.0};
    for (std::size_t r = 0; r + 2 < n; ++r)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j <= i; ++j) {
          const double v = lambda * c[i] * c[j];
          const std::size_t row = r + static_cast<std::size_t>(i);
          if (i == j) diag[row] += v;
          else if (i - j == 1) sub1[row] += v;
          else sub2[row] += v;
        }
  }

  std::vector<double> multiply(const std::vector<double>& z) const {
    const std::size_t n = diag.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag[i] * z[i];
      if (i >= 1) s += sub1[i] * z[i - 1];
      if (i >= 2) s += sub2[i] * z[i - 2];
      if (i + 1 < n) s += sub1[i + 1] * z[i + 1];
      if (i + 2 < n) s += sub2[i + 2] * z[i + 2];
      out[i] = s;
    }
    return out;
  }
};

class BandedCholesky {
 public:
  explicit BandedCholesky(const Pentadiagonal& a)
      : l0_(a.diag.size()), l1_(a.diag.size(), 0.0), l2_(a.diag.size(), 0.0) {
    const std::size_t n = a.diag.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= 2) l2_[i] = a.sub2[i] / l0_[i - 2];
      if (i >= 1) l1_[i] = (a.sub1[i] - (i >= 2 ? l2_[i] * l1_[i - 1] : 0.0)) / l0_[i - 1];
      const double piv = a.diag[i] - l1_[i] * l1_[i] - l2_[i] * l2_[i];
      if (!(piv > 0.0)) throw InvalidInput("hp_filter: system is not positive definite");
      l0_[i] = std::sqrt(piv);
    }
  }

  std::vector<double> solve(std::vector<double> b) const {
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i) {
      double s = b[i];
      if (i >= 1) s -= l1_[i] * b[i - 1];
      if (i >= 2) s -= l2_[i] * b[i - 2];
      b[i] = s / l0_[i];
    }
    for (std::size_t k = n; k-- > 0;) {
      double s = b[k];
      if (k + 1 < n) s -= l1_[k + 1] * b[k + 1];
      if (k + 2 < n) s -= l2_[k + 2] * b[k + 2];
      b[k] = s / l0_[k];
    }
    return b;
  }

 private:
  std::vector<double> l0_, l1_, l2_;
};

}  // namespace

MacroSeries fred_transform(const FredInputs& in) {
  require_aligned(in.pcesvc96, in.cnp16ov, "PCESVC96");
  require_aligned(in.pcndgc96, in.cnp16ov, "PCNDGC96");
  require_aligned(in.gdpic1, in.cnp16ov, "GDPIC1");
  require_aligned(in.hoanbs, in.cnp16ov, "HOANBS");
  const auto pop = in.cnp16ov.values().col(0).array();
  if ((pop == 0.0).any()) throw InvalidInput("fred_transform: CNP16OV contains zero entries");
  const auto& idx = in.cnp16ov.index();

  Matrix c = (2.5e5 * (in.pcesvc96.values().col(0).array() + in.pcndgc96.values().col(0).array()) / pop).matrix();
  Matrix i = (2.5e5 * in.gdpic1.values().col(0).array() / pop).matrix();
  Matrix h = (6000.0 * in.hoanbs.values().col(0).array() / pop).matrix();
  Matrix y = c + i;
  return MacroSeries{named(std::move(c), idx, "c"), named(std::move(i), idx, "i"),
                     named(std::move(y), idx, "y"), named(std::move(h), idx, "h")};
}

TimeSeries read_fred_csv_file(const std::string& path) {
  CsvOptions opts;
  opts.has_index = true;
  TimeSeries ts = read_series_csv_file(path, opts);
  if (ts.dim() != 1) throw InvalidInput("FRED file '" + path + "' must have exactly one value column");
  return ts;
}

std::vector<double> hp_filter(const std::vector<double>& x, double lambda) {
  if (x.size() < 3) throw InvalidInput("hp_filter: need at least 3 observations");
  if (!(lambda >= 0.0)) throw InvalidInput("hp_filter: lambda must be nonnegative");
  if (lambda == 0.0) return x;
  // Lines are fixed points of the smoother, so only the deviation from the OLS line is solved for.
  const std::size_t n = x.size();
  const double mid = 0.5 * static_cast<double>(n - 1);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) - mid;
    sxy += u * (x[i] - mean);
    sxx += u * u;
  }
  const double slope = sxy / sxx;
  std::vector<double> line(n);
  std::vector<double> dev(n);
  for (std::size_t i = 0; i < n; ++i) {
    line[i] = mean + slope * (static_cast<double>(i) - mid);
    dev[i] = x[i] - line[i];
  }
  const Pentadiagonal a(n, lambda);
  const BandedCholesky chol(a);
  std::vector<double> z = chol.solve(dev);
  // One step of iterative refinement.
  const std::vector<double> az = a.multiply(z);
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = dev[i] - az[i];
  const std::vector<double> dz = chol.solve(std::move(r));
  for (std::size_t i = 0; i < n; ++i) z[i] += dz[i] + line[i];
  return z;
}

TimeSeries hp_filter(const TimeSeries& series, double lambda) {
  Matrix trend(series.values().rows(), series.values().cols());
  for (std::size_t j = 0; j < series.dim(); ++j) {
    const auto z = hp_filter(series.column_values(j), lambda);
    for (std::size_t t = 0; t < z.size(); ++t)
      trend(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = z[t];
  }
  TimeSeries out(std::move(trend), series.index(), series.name());
  out.set_column_names(series.column_names());
  return out;
}

TimeSeries detrend(const TimeSeries& raw, const TimeSeries& trend) {
  if (raw.size() != trend.size() || raw.dim() != trend.dim())
    throw InvalidInput("detrend: raw and trend shapes differ");
  if ((raw.values().array() <= 0.0).any() || (trend.values().array() <= 0.0).any())
    throw InvalidInput("detrend: entries must be strictly positive");
  Matrix x = (raw.values().array().log() - trend.values().array().log()).matrix();
  TimeSeries out(std::move(x), raw.index(), raw.name());
  out.set_column_names(raw.column_names());
  return out;
}

void PriorSpec::validate() const {
  for (const auto& p : params) {
    if (!(p.lower < p.upper)) throw InvalidInput("prior '" + p.name + "': need lower < upper");
    if (p.mean.has_value() != p.variance.has_value())
      throw InvalidInput("prior '" + p.name + "': mean and variance must be given together");
    if (p.variance && !(*p.variance > 0.0))
      throw InvalidInput("prior '" + p.name + "': variance must be positive");
  }
}

Box PriorSpec::box() const {
  Box b{Vector(static_cast<Eigen::Index>(params.size())), Vector(static_cast<Eigen::Index>(params.size()))};
  for (std::size_t i = 0; i < params.size(); ++i) {
    b.lower(static_cast<Eigen::Index>(i)) = params[i].lower;
    b.upper(static_cast<Eigen::Index>(i)) = params[i].upper;
  }
  return b;
}

double PriorSpec::penalty(const Vector& theta) const {
  double s = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& p = params[i];
    if (!p.mean) continue;
    const double dev = theta(static_cast<Eigen::Index>(i)) - *p.mean;
    s += dev * dev / (2.0 * *p.variance);
  }
  return s;
}

MleResult penalized_mle(const ModelBuilder& builder, const TimeSeries& data, const PriorSpec& priors,
                        const Vector& init, const SimplexOptions& options) {
  priors.validate();
  if (init.size() != static_cast<Eigen::Index>(priors.params.size()))
    throw InvalidInput("penalized_mle: init has " + std::to_string(init.size()) +
                       " entries, priors describe " + std::to_string(priors.params.size()));
  const Box box = priors.box();
  if (!box.contains(init)) throw InvalidInput("penalized_mle: init lies outside the parameter boxes");

  auto neg_loglik = [&](const Vector& theta) {
    try {
      return kalman_filter(builder(theta), data).neg_loglik;
    } catch (const InvalidInput&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  auto objective = [&](const Vector& theta) { return neg_loglik(theta) + priors.penalty(theta); };

  MleResult r;
  r.initial_objective = objective(init);
  const SimplexResult s = minimize_box_simplex(objective, init, box, options);
  r.theta = s.x;
  r.objective = s.value;
  r.neg_loglik = neg_loglik(s.x);
  r.converged = s.converged;
  r.iterations = s.iterations;
  r.evaluations = s.evaluations;
  return r;
}

ModelBuilder var1_statespace_builder(int k, bool observation_noise) {
  if (k < 1) throw InvalidInput("var1_statespace_builder: k must be >= 1");
  return [k, observation_noise](const Vector& theta) {
    const Eigen::Index kk = k;
    const Eigen::Index expected = kk * kk + kk + (observation_noise ? kk : 0);
    if (theta.size() != expected)
      throw InvalidInput("VAR(1) builder expects " + std::to_string(expected) + " parameters");
    Matrix a(kk, kk);
    for (Eigen::Index i = 0; i < kk; ++i)
      for (Eigen::Index j = 0; j < kk; ++j) a(i, j) = theta(i * kk + j);
    const Matrix q = theta.segment(kk * kk, kk).asDiagonal();
    const Matrix h = observation_noise ? Matrix(theta.segment(kk * kk + kk, kk).asDiagonal())
                                       : Matrix::Zero(kk, kk);
    if (spectral_radius(a) >= 1.0 - 1e-10) throw InvalidInput("VAR(1) builder: A is not stable");
    const Matrix p1 = stationary_covariance(a, q);
    return StateSpaceModel(Matrix::Identity(kk, kk), a, h, q, Vector::Zero(kk), p1);
  };
}

PriorSpec var1_default_priors(int k, bool observation_noise) {
  PriorSpec spec;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      spec.params.push_back({"A" + std::to_string(i + 1) + std::to_string(j + 1), -0.999, 0.999,
                             std::nullopt, std::nullopt});
  for (int i = 0; i < k; ++i)
    spec.params.push_back({"q" + std::to_string(i + 1), 1e-8, 1e3, std::nullopt, std::nullopt});
  if (observation_noise)
    for (int i = 0; i < k; ++i)
      spec.params.push_back({"h" + std::to_string(i + 1), 0.0, 1e3, std::nullopt, std::nullopt});
  return spec;
}

}  // namespace tsbound
