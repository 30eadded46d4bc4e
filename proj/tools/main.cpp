#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/params.hpp"

using namespace tsbound::cli;

namespace {

using Runner = std::function<int(const Params&, std::ostream&)>;

struct Subcommand {
  CLI::App* app = nullptr;
  FlagSet flags;
  Runner run;
};

void add_common(Subcommand& sc, std::string& config) {
  sc.app->add_option("--config", config, "JSON config; a section named after the subcommand is used when present");
  sc.flags.text(*sc.app, "--csv", "csv", "CSV output path ('-' for stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Risk bounds for time-series forecasters"};
  app.require_subcommand(1);
  std::string config;
  std::map<std::string, Subcommand> subs;

  auto make = [&](const std::string& name, const std::string& help, Runner run) -> Subcommand& {
    Subcommand& sc = subs[name];
    sc.app = app.add_subcommand(name, help);
    sc.run = std::move(run);
    add_common(sc, config);
    return sc;
  };
  auto add_bound_inputs = [](Subcommand& sc) {
    sc.flags.number(*sc.app, "--eta", "eta", "Confidence parameter (default 0.15)");
    sc.flags.number(*sc.app, "--moment-m", "moment_m", "Moment bound M on sqrt(E[loss^2])");
    sc.flags.text(*sc.app, "--variant", "variant", "as-printed | exact-inversion");
    sc.flags.number(*sc.app, "--beta", "beta_gap", "Constant mixing coefficient");
    sc.flags.text(*sc.app, "--mixing-table", "mixing_table", "CSV of gap,beta rows");
    sc.flags.integer(*sc.app, "--n", "n", "Sample size");
  };

  {
    auto& sc = make("bound", "High-probability risk bound for one model", run_bound);
    add_bound_inputs(sc);
    sc.flags.number(*sc.app, "--train", "train_err", "Training error");
    sc.flags.number(*sc.app, "--delta", "delta_d", "Truncation penalty");
    sc.flags.integer(*sc.app, "--mu", "mu", "Number of block pairs");
    sc.flags.integer(*sc.app, "--a", "a", "Block length");
    sc.flags.integer(*sc.app, "--d", "d", "Predictor memory");
    sc.flags.integer(*sc.app, "--vcd", "vcd", "VC dimension");
    sc.flags.text(*sc.app, "--model", "model", "Model class: mean, ar:d, var:k:d, linear:p, ss:d:p");
    sc.flags.text(*sc.app, "--series", "series", "Series CSV to fit instead of --train");
    sc.flags.text(*sc.app, "--loss", "loss", "squared | absolute | euclidean");
    sc.flags.text(*sc.app, "--label", "label", "Row label for CSV output");
  }
  {
    auto& sc = make("fit", "Fit a forecaster and report its training error", run_fit);
    sc.flags.text(*sc.app, "--series", "series", "Series CSV");
    sc.flags.text(*sc.app, "--model", "model", "mean, ar:d, var:k:d, sv, var1-mle");
    sc.flags.integer(*sc.app, "--column", "column", "Use a single column (0-based)");
    sc.flags.integer(*sc.app, "--d", "d", "Truncation depth for sv");
    sc.flags.text(*sc.app, "--loss", "loss", "squared | absolute | euclidean");
    sc.flags.toggle(*sc.app, "--prices", "prices", "sv: input holds prices, not returns");
    sc.flags.toggle(*sc.app, "--obs-noise", "obs_noise", "var1-mle: include observation noise");
    sc.flags.number(*sc.app, "--moment-m", "moment_m", "sv: report delta_d with E[loss(Y_1)] <= M");
  }
  {
    auto& sc = make("srm", "Rank candidate models by their risk bounds", run_srm);
    add_bound_inputs(sc);
  }
  {
    auto& sc = make("tradeoff", "Tail-probability grid over (mu, eps)", run_tradeoff);
    sc.flags.integer(*sc.app, "--vcd", "vcd", "VC dimension (default 3)");
    sc.flags.number(*sc.app, "--beta", "beta_gap", "Mixing coefficient at the gap (default 0)");
    sc.flags.integer(*sc.app, "--mu-min", "mu_min", "Smallest mu");
    sc.flags.integer(*sc.app, "--mu-max", "mu_max", "Largest mu");
    sc.flags.integer(*sc.app, "--mu-count", "mu_count", "Number of mu values");
    sc.flags.integer(*sc.app, "--eps-count", "eps_count", "Number of eps values");
    sc.flags.number(*sc.app, "--eps-max", "eps_max", "Largest eps");
    sc.flags.text(*sc.app, "--exponent", "exponent", "exact | simplified");
    sc.flags.text(*sc.app, "--boundary-csv", "boundary_csv", "Boundary curve output path");
  }
  {
    auto& sc = make("hpfilter", "Hodrick-Prescott trend and cycle", run_hpfilter);
    sc.flags.text(*sc.app, "--series", "series", "Series CSV");
    sc.flags.number(*sc.app, "--lambda", "lambda", "Smoothing parameter (default 1600)");
    sc.flags.toggle(*sc.app, "--log", "log", "Filter the log of the series");
  }
  {
    auto& sc = make("fredprep", "Per-capita transforms and HP detrending of FRED downloads", run_fredprep);
    sc.flags.text(*sc.app, "--dir", "dir", "Directory holding PCESVC96.csv, PCNDGC96.csv, ...");
    sc.flags.number(*sc.app, "--lambda", "lambda", "Smoothing parameter (default 1600)");
  }
  {
    auto& sc = make("simulate", "Generate a synthetic series", run_simulate);
    sc.flags.text(*sc.app, "--process", "process", "iid | ar1 | sv");
    sc.flags.integer(*sc.app, "--n", "n", "Length");
    sc.flags.integer(*sc.app, "--seed", "seed", "Random seed");
    sc.flags.number(*sc.app, "--mean", "mean", "iid mean");
    sc.flags.number(*sc.app, "--variance", "variance", "iid variance");
    sc.flags.number(*sc.app, "--phi", "phi", "ar1/sv persistence");
    sc.flags.number(*sc.app, "--sigma2", "sigma2", "ar1 innovation variance");
    sc.flags.number(*sc.app, "--kappa", "kappa", "sv level");
    sc.flags.number(*sc.app, "--sigma-w2", "sigma_w2", "sv state noise variance");
  }
  {
    auto& sc = make("coverage", "Monte-Carlo coverage of the bounds", run_coverage);
    sc.flags.integer(*sc.app, "--n", "n", "Sample size per replication");
    sc.flags.integer(*sc.app, "--reps", "reps", "Replications");
    sc.flags.integer(*sc.app, "--risk-reps", "risk_reps", "Paths per true-risk estimate");
    sc.flags.integer(*sc.app, "--seed", "seed", "Base seed");
    sc.flags.number(*sc.app, "--eta", "eta", "Confidence parameter");
    sc.flags.text(*sc.app, "--variant", "variant", "as-printed | exact-inversion");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (auto& [name, sc] : subs) {
    if (!sc.app->parsed()) continue;
    try {
      Json base = config.empty() ? Json::object() : load_config_section(config, name);
      const Params params(sc.flags.overlay(std::move(base)));
      return sc.run(params, std::cout);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return exit_code_for(e);
    }
  }
  return 2;
}
