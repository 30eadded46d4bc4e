#include "cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tsbound/bounds.hpp"
#include "tsbound/capacity.hpp"
#include "tsbound/econ.hpp"
#include "tsbound/error.hpp"
#include "tsbound/forecasters.hpp"
#include "tsbound/montecarlo.hpp"
#include "tsbound/srm.hpp"
#include "tsbound/statespace.hpp"
#include "tsbound/volatility.hpp"

namespace tsbound::cli {
namespace {

void echo(std::ostream& out, const std::string& command, const Params& p) {
  out << "# " << command << " inputs: " << p.json().dump() << '\n';
}

/// Sends CSV to the "csv" path, or to `out` when the path is "-".
template <class Writer>
void emit_csv(const Params& p, const std::string& key, std::ostream& out, Writer&& write) {
  if (!p.has(key)) return;
  const std::string path = p.text(key);
  if (path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw InvalidInput("cannot write '" + path + "'");
  write(file);
}

PenaltyVariant variant_from(const Params& p) {
  return parse_penalty_variant(p.text("variant", "as-printed"));
}

LossSpec loss_from(const Params& p, const std::string& fallback = "squared") {
  return LossSpec(parse_loss_kind(p.text("loss", fallback)));
}

MixingProfile profile_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("profile must be an object");
  const Params q(j);
  const std::string type = q.text("type");
  if (type == "independent") return MixingProfile::independent();
  if (type == "constant") return MixingProfile::constant(q.number("beta"));
  if (type == "exponential")
    return MixingProfile::exponential(q.number("c1"), q.number("c2"), q.number("kappa", 1.0));
  if (type == "algebraic") return MixingProfile::algebraic(q.number("c1"), q.number("r"));
  if (type == "table") {
    std::vector<std::pair<long, double>> entries;
    for (const auto& e : q.at("entries")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number())
        throw InvalidInput("table entries must be [gap, beta] pairs");
      entries.emplace_back(e[0].get<long>(), e[1].get<double>());
    }
    return MixingProfile::table(std::move(entries));
  }
  throw InvalidInput("unknown mixing profile type '" + type + "'");
}

int vcd_from(const Params& p) {
  if (p.has("vcd")) return static_cast<int>(p.integer("vcd"));
  return vc_dimension(parse_model_class(p.text("model"))).value();
}

long memory_of(const ModelClassDescriptor& desc) {
  if (const auto* ar = std::get_if<model_class::Ar>(&desc)) return ar->d;
  if (const auto* var = std::get_if<model_class::Var>(&desc)) return var->d;
  if (const auto* ss = std::get_if<model_class::StateSpaceTruncated>(&desc)) return ss->d;
  if (std::holds_alternative<model_class::Mean>(desc)) return 0;
  throw InvalidInput("model '" + describe(desc) + "' has no fixed memory; pass d");
}

TimeSeries load_series(const Params& p) {
  TimeSeries s = read_series_csv_file(p.text("series"));
  if (p.has("column")) s = s.column(static_cast<std::size_t>(p.integer("column")));
  return s;
}

/// Least-squares fit for the fixed-memory descriptors.
LinearFit fit_linear(const TimeSeries& series, const ModelClassDescriptor& desc, bool intercept) {
  if (std::holds_alternative<model_class::Mean>(desc)) return fit_mean(series);
  if (const auto* ar = std::get_if<model_class::Ar>(&desc))
    return fit_ar(series, static_cast<std::size_t>(ar->d), intercept);
  if (const auto* var = std::get_if<model_class::Var>(&desc)) {
    if (static_cast<std::size_t>(var->k) != series.dim())
      throw InvalidInput("var:k:d needs a series with k columns");
    return fit_var(series, static_cast<std::size_t>(var->d), intercept);
  }
  throw InvalidInput("series fitting supports mean, ar and var models");
}

BlockingPlan plan_from(const Params& p, long d, int vcd, double eta, double moment_m,
                       const MixingProfile& profile, PenaltyVariant variant) {
  if (p.has("mu") && p.has("a")) {
    const long mu = p.integer("mu");
    const long a = p.integer("a");
    const long n = p.integer("n", 2 * mu * a + d);
    return make_plan(n, d, a, mu, profile);
  }
  return choose_blocks(p.integer("n"), d, profile, eta, vcd, moment_m, variant);
}

void print_fit(std::ostream& out, const LinearFit& fit) {
  const Eigen::IOFormat row(6, Eigen::DontAlignCols, " ", "; ", "", "", "[", "]");
  out << "intercept       " << fit.intercept.transpose().format(row) << '\n';
  for (std::size_t l = 0; l < fit.lags.size(); ++l)
    out << "lag_" << std::left << std::setw(12) << (l + 1) << fit.lags[l].format(row) << '\n';
  out << "residual_cov    " << fit.residual_cov.format(row) << '\n';
}

}  // namespace

MixingProfile profile_from(const Params& p) {
  if (p.has("profile")) return profile_from_json(p.at("profile"));
  if (p.has("mixing_table")) return read_mixing_table_csv_file(p.text("mixing_table"));
  if (p.has("beta_gap")) return MixingProfile::constant(p.number("beta_gap"));
  return MixingProfile::independent();
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return static_cast<int>(err->code());
  return static_cast<int>(ErrorCode::invalid_input);
}

int run_bound(const Params& p, std::ostream& out) {
  echo(out, "bound", p);
  const PenaltyVariant variant = variant_from(p);
  const MixingProfile profile = profile_from(p);
  const double eta = p.number("eta", 0.15);
  const double moment_m = p.number("moment_m");
  const LossSpec loss = loss_from(p);

  BoundInputs in;
  in.eta = eta;
  in.moment_m = moment_m;
  in.vcd = vcd_from(p);
  long d = 0;
  Params plan_params = p;
  if (p.has("series")) {
    const TimeSeries series = load_series(p);
    const auto desc = parse_model_class(p.text("model"));
    const Predictor f = make_linear_predictor(fit_linear(series, desc, p.flag("intercept", true)));
    d = static_cast<long>(f.memory());
    in.train_err = training_error(series, f, f.memory(), loss);
    in.delta_d = 0.0;
    if (!p.has("n")) plan_params.set("n", static_cast<long>(series.size()));
  } else {
    in.train_err = p.number("train_err");
    in.delta_d = p.number("delta_d", 0.0);
    d = p.has("d") ? p.integer("d") : memory_of(parse_model_class(p.text("model")));
  }
  in.plan = plan_from(plan_params, d, in.vcd, eta, moment_m, profile, variant);

  const BoundReport report = risk_bound(in, variant);
  print_report(out, report);
  emit_csv(p, "csv", out, [&](std::ostream& o) {
    write_report_csv(o, {report}, {p.text("label", "model")});
  });
  if (report.trivial) {
    out << "bound is trivial: the penalty saturated\n";
    return static_cast<int>(ErrorCode::infeasible);
  }
  return 0;
}

int run_fit(const Params& p, std::ostream& out) {
  echo(out, "fit", p);
  const std::string model = p.text("model");
  const LossSpec loss = loss_from(p);
  out << std::setprecision(6);
  bool converged = true;

  if (model == "sv") {
    TimeSeries raw = load_series(p);
    if (p.flag("prices", false)) raw = log_returns_from_prices(raw);
    const LinearizedReturns lin = linearize_returns(raw);
    SvParams init;
    init.kappa = p.number("kappa", init.kappa);
    init.phi = p.number("phi", init.phi);
    init.sigma_w2 = p.number("sigma_w2", init.sigma_w2);
    const SvFit fit = fit_sv(lin.log_squared, init);
    const auto d = static_cast<std::size_t>(p.integer("d", 2));
    const double train = training_error(lin.log_squared, make_sv_predictor(fit.params, d), d, loss);
    out << "model           SV\n"
        << "observations    " << lin.log_squared.size() << '\n'
        << "dropped_zeros   " << lin.dropped_zeros << '\n'
        << "kappa           " << fit.params.kappa << '\n'
        << "phi             " << fit.params.phi << '\n'
        << "sigma_w2        " << fit.params.sigma_w2 << '\n'
        << "neg_loglik      " << fit.neg_loglik << '\n'
        << "converged       " << (fit.converged ? "yes" : "no") << '\n'
        << "d               " << d << '\n'
        << "train_err       " << train << '\n';
    if (p.has("ey1") || p.has("moment_m")) {
      const double ey1 = p.number("ey1", p.number("moment_m", 0.0));
      const TruncationPenalty pen =
          delta_d_statespace(sv_to_statespace(fit.params), lin.log_squared, d, loss, ey1);
      out << "delta_first     " << pen.first_term << '\n'
          << "delta_second    " << pen.second_term << '\n'
          << "delta_d         " << pen.total << '\n';
    }
    converged = fit.converged;
  } else if (model == "var1-mle") {
    const TimeSeries series = load_series(p);
    const int k = static_cast<int>(series.dim());
    const bool noise = p.flag("obs_noise", false);
    const PriorSpec priors = var1_default_priors(k, noise);
    const Box box = priors.box();
    Vector init = Vector::Zero(box.lower.size());
    const Matrix centered = series.values().rowwise() - series.values().colwise().mean();
    const Vector var = centered.colwise().squaredNorm().transpose() /
                       static_cast<double>(std::max<std::size_t>(series.size() - 1, 1));
    for (int i = 0; i < k; ++i) {
      init(k * k + i) = var(i);
      if (noise) init(k * k + k + i) = 0.1 * var(i);
    }
    init = box.project(init);
    const MleResult fit = penalized_mle(var1_statespace_builder(k, noise), series, priors, init);
    const Eigen::IOFormat row(6, Eigen::DontAlignCols, " ", "; ", "", "", "[", "]");
    out << "model           VAR(1) state space\n"
        << "theta           " << fit.theta.transpose().format(row) << '\n'
        << "neg_loglik      " << fit.neg_loglik << '\n'
        << "objective       " << fit.objective << '\n'
        << "converged       " << (fit.converged ? "yes" : "no") << '\n';
    converged = fit.converged;
  } else {
    const TimeSeries series = load_series(p);
    const auto desc = parse_model_class(model);
    const LinearFit fit = fit_linear(series, desc, p.flag("intercept", true));
    const Predictor f = make_linear_predictor(fit, describe(desc));
    out << "model           " << describe(desc) << '\n'
        << "observations    " << series.size() << '\n';
    print_fit(out, fit);
    out << "d               " << f.memory() << '\n'
        << "train_err       " << training_error(series, f, f.memory(), loss) << '\n';
  }
  if (!converged) {
    out << "optimizer did not converge\n";
    return static_cast<int>(ErrorCode::non_convergence);
  }
  return 0;
}

int run_srm(const Params& p, std::ostream& out) {
  echo(out, "srm", p);
  SrmOptions opt;
  opt.eta = p.number("eta", 0.15);
  opt.moment_m = p.number("moment_m");
  opt.variant = variant_from(p);
  opt.profile = profile_from(p);
  opt.n = p.integer("n", 0);
  opt.aic_baseline = p.text("aic_baseline", "");

  std::vector<CandidateModel> candidates;
  const Json& list = p.at("candidates");
  if (!list.is_array() || list.empty()) throw InvalidInput("candidates must be a nonempty list");
  for (const auto& item : list) {
    const Params c(item);
    CandidateModel m;
    m.name = c.text("name");
    m.vcd = vcd_from(c);
    m.d = c.has("d") ? c.integer("d") : memory_of(parse_model_class(c.text("model")));
    m.train_err = c.number("train_err");
    m.delta_d = c.number("delta_d", 0.0);
    if (c.has("mu") && c.has("a")) {
      const long n = c.integer("n", opt.n > 0 ? opt.n : 2 * c.integer("mu") * c.integer("a") + m.d);
      m.plan = make_plan(n, m.d, c.integer("a"), c.integer("mu"), *opt.profile);
    }
    if (c.has("neg_loglik")) m.neg_loglik = c.number("neg_loglik");
    m.n_params = static_cast<int>(c.integer("n_params", m.vcd));
    candidates.push_back(std::move(m));
  }

  const SrmResult result = srm_select(std::move(candidates), opt);
  print_srm_table(out, result);
  out << "selected        " << result.winner().name << '\n';
  emit_csv(p, "csv", out, [&](std::ostream& o) { write_srm_csv(o, result); });
  return result.winner_trivial ? static_cast<int>(ErrorCode::infeasible) : 0;
}

int run_tradeoff(const Params& p, std::ostream& out) {
  echo(out, "tradeoff", p);
  const int vcd = static_cast<int>(p.integer("vcd", 3));
  const double beta = p.number("beta_gap", 0.0);
  const long mu_min = p.integer("mu_min", 50);
  const long mu_max = p.integer("mu_max", 2000);
  const long mu_count = p.integer("mu_count", 40);
  const long eps_count = p.integer("eps_count", 60);
  const std::string exponent_name = p.text("exponent", "exact");
  if (exponent_name != "exact" && exponent_name != "simplified")
    throw InvalidInput("exponent must be exact or simplified");
  const TailExponent exponent =
      exponent_name == "exact" ? TailExponent::exact : TailExponent::simplified;
  const double eps_max =
      p.number("eps_max", exponent == TailExponent::exact ? max_normalized_eps() : 1.0);
  if (mu_min < 1 || mu_max < mu_min || mu_count < 1 || eps_count < 1 || !(eps_max > 0.0))
    throw InvalidInput("tradeoff grid ranges are empty");

  std::vector<long> mu;
  for (long i = 0; i < mu_count; ++i) {
    const double frac = mu_count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(mu_count - 1);
    const long v = mu_min + std::lround(frac * static_cast<double>(mu_max - mu_min));
    if (mu.empty() || v > mu.back()) mu.push_back(v);
  }
  std::vector<double> eps;
  for (long i = 1; i <= eps_count; ++i)
    eps.push_back(eps_max * static_cast<double>(i) / static_cast<double>(eps_count));

  const TradeoffGrid grid = tradeoff_grid(mu, eps, vcd, beta, exponent);
  out << std::setprecision(6) << "mu,eps_boundary\n";
  for (std::size_t j = 0; j < grid.mu.size(); ++j)
    out << grid.mu[j] << ',' << grid.boundary[j] << '\n';
  emit_csv(p, "csv", out, [&](std::ostream& o) { write_tradeoff_csv(o, grid); });
  emit_csv(p, "boundary_csv", out, [&](std::ostream& o) { write_boundary_csv(o, grid); });
  return 0;
}

int run_hpfilter(const Params& p, std::ostream& out) {
  echo(out, "hpfilter", p);
  TimeSeries series = read_series_csv_file(p.text("series"));
  const double lambda = p.number("lambda", 1600.0);
  const bool take_log = p.flag("log", false);
  Matrix x = series.values();
  if (take_log) {
    if ((x.array() <= 0.0).any()) throw InvalidInput("hpfilter --log needs positive data");
    x = x.array().log().matrix();
  }
  const TimeSeries input(x, series.index(), series.name());
  const TimeSeries trend = hp_filter(input, lambda);
  Matrix both(x.rows(), 2 * x.cols());
  std::vector<std::string> names;
  const auto& cols = series.column_names();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const std::string base =
        static_cast<std::size_t>(j) < cols.size() ? cols[static_cast<std::size_t>(j)] : "y" + std::to_string(j + 1);
    both.col(2 * j) = trend.values().col(j);
    both.col(2 * j + 1) = x.col(j) - trend.values().col(j);
    names.push_back(base + "_trend");
    names.push_back(base + "_cycle");
  }
  TimeSeries result(both, series.index(), series.name());
  result.set_column_names(names);
  if (!p.has("csv")) {
    write_series_csv(out, result);
    return 0;
  }
  emit_csv(p, "csv", out, [&](std::ostream& o) { write_series_csv(o, result); });
  out << "rows            " << result.size() << '\n' << "lambda          " << lambda << '\n';
  return 0;
}

int run_fredprep(const Params& p, std::ostream& out) {
  echo(out, "fredprep", p);
  const std::filesystem::path dir = p.text("dir", ".");
  auto file = [&](const std::string& key, const std::string& id) {
    return p.has(key) ? p.text(key) : (dir / (id + ".csv")).string();
  };
  FredInputs in{read_fred_csv_file(file("pcesvc96", "PCESVC96")),
                read_fred_csv_file(file("pcndgc96", "PCNDGC96")),
                read_fred_csv_file(file("gdpic1", "GDPIC1")),
                read_fred_csv_file(file("hoanbs", "HOANBS")),
                read_fred_csv_file(file("cnp16ov", "CNP16OV"))};
  const MacroSeries macro = fred_transform(in);
  const double lambda = p.number("lambda", 1600.0);
  const std::vector<const TimeSeries*> parts{&macro.consumption, &macro.investment, &macro.output,
                                             &macro.hours};
  Matrix cycles(static_cast<Eigen::Index>(macro.output.size()), 4);
  for (Eigen::Index j = 0; j < 4; ++j) {
    const TimeSeries& raw = *parts[static_cast<std::size_t>(j)];
    cycles.col(j) = detrend(raw, hp_filter(raw, lambda)).values().col(0);
  }
  TimeSeries result(cycles, macro.output.index(), "macro-cycles");
  result.set_column_names({"consumption", "investment", "output", "hours"});
  if (!p.has("csv")) {
    write_series_csv(out, result);
    return 0;
  }
  emit_csv(p, "csv", out, [&](std::ostream& o) { write_series_csv(o, result); });
  out << "rows            " << result.size() << '\n';
  return 0;
}

int run_simulate(const Params& p, std::ostream& out) {
  echo(out, "simulate", p);
  const std::string process = p.text("process", "ar1");
  const auto n = static_cast<std::size_t>(p.integer("n", 500));
  const auto seed = static_cast<std::uint64_t>(p.integer("seed", 1));
  if (n < 1) throw InvalidInput("n must be >= 1");
  TimeSeries series = [&] {
    if (process == "iid") return iid_gaussian(p.number("mean", 0.0), p.number("variance", 1.0))->simulate(n, seed);
    if (process == "ar1") return ar1_process(p.number("phi", 0.5), p.number("sigma2", 1.0))->simulate(n, seed);
    if (process == "sv") {
      SvParams sv;
      sv.kappa = p.number("kappa", sv.kappa);
      sv.phi = p.number("phi", sv.phi);
      sv.sigma_w2 = p.number("sigma_w2", sv.sigma_w2);
      return simulate_sv_returns(sv, n, seed);
    }
    throw InvalidInput("process must be iid, ar1 or sv");
  }();
  series.set_column_names({"y"});
  if (!p.has("csv")) {
    write_series_csv(out, series);
    return 0;
  }
  emit_csv(p, "csv", out, [&](std::ostream& o) { write_series_csv(o, series); });
  out << "rows            " << series.size() << '\n';
  return 0;
}

namespace {

CoverageScenario scenario_from(const Params& s, const Params& global) {
  CoverageScenario sc;
  sc.name = s.text("name");
  const Params proc(s.at("process"));
  const std::string type = proc.text("type");
  if (type == "iid")
    sc.process = iid_gaussian(proc.number("mean", 0.0), proc.number("variance", 1.0));
  else if (type == "ar1")
    sc.process = ar1_process(proc.number("phi"), proc.number("sigma2", 1.0));
  else
    throw InvalidInput("coverage process must be iid or ar1");

  const auto desc = parse_model_class(s.text("model"));
  if (std::holds_alternative<model_class::Mean>(desc))
    sc.model = mean_class();
  else if (const auto* ar = std::get_if<model_class::Ar>(&desc))
    sc.model = ar_class(static_cast<std::size_t>(ar->d), s.flag("intercept", true));
  else
    throw InvalidInput("coverage model must be mean or ar:d");

  auto pick_number = [&](const std::string& key, double fallback) {
    return global.has(key) ? global.number(key) : s.number(key, fallback);
  };
  auto pick_integer = [&](const std::string& key, long fallback) {
    return global.has(key) ? global.integer(key) : s.integer(key, fallback);
  };
  sc.loss = LossSpec(parse_loss_kind(s.text("loss", "squared")));
  sc.eta = pick_number("eta", sc.eta);
  sc.profile = profile_from(s);
  sc.n = static_cast<std::size_t>(pick_integer("n", static_cast<long>(sc.n)));
  sc.reps = static_cast<std::size_t>(pick_integer("reps", static_cast<long>(sc.reps)));
  sc.risk_reps = static_cast<std::size_t>(pick_integer("risk_reps", static_cast<long>(sc.risk_reps)));
  sc.seed = static_cast<std::uint64_t>(pick_integer("seed", static_cast<long>(sc.seed)));
  sc.variant = parse_penalty_variant(global.text("variant", s.text("variant", "as-printed")));
  return sc;
}

Json default_scenarios() {
  return Json::parse(R"([
    {"name": "iid-gaussian/mean", "process": {"type": "iid", "mean": 0.0, "variance": 1.0},
     "model": "mean", "profile": {"type": "independent"}},
    {"name": "ar1/ar1", "process": {"type": "ar1", "phi": 0.9, "sigma2": 1.0},
     "model": "ar:1", "profile": {"type": "exponential", "c1": 1.0, "c2": 0.105360515657826, "kappa": 1.0}}
  ])");
}

}  // namespace

int run_coverage(const Params& p, std::ostream& out) {
  const Params resolved = [&] {
    Params r = p;
    if (!r.has("scenarios")) r.set("scenarios", default_scenarios());
    return r;
  }();
  echo(out, "coverage", resolved);
  std::vector<CoverageResult> results;
  bool all_consistent = true;
  out << std::setprecision(6);
  for (const auto& item : resolved.at("scenarios")) {
    const CoverageScenario sc = scenario_from(Params(item), p);
    const CoverageResult r = coverage_experiment(sc);
    const bool ok = coverage_consistent(r.covered, r.reps, 1.0 - sc.eta);
    all_consistent = all_consistent && ok;
    out << std::left << std::setw(20) << r.name << " coverage " << r.coverage << " (" << r.covered
        << '/' << r.reps << ")  mean slack " << r.mean_slack << "  M " << r.moment_m << "  mu "
        << r.plan.mu << "  a " << r.plan.a << "  " << (ok ? "consistent" : "BELOW NOMINAL") << '\n';
    results.push_back(r);
  }
  emit_csv(p, "csv", out, [&](std::ostream& o) { write_coverage_csv(o, results); });
  if (!all_consistent) out << "coverage below nominal in at least one scenario\n";
  return 0;
}

}  // namespace tsbound::cli
