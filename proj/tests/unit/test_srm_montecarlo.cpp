#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tsbound/error.hpp"
#include "tsbound/montecarlo.hpp"
#include "tsbound/srm.hpp"

using namespace tsbound;

namespace {

BlockingPlan plan(long mu, long a, long d) {
  BlockingPlan p;
  p.mu = mu;
  p.a = a;
  p.d = d;
  p.n = 11853;
  return p;
}

std::vector<CandidateModel> table_trio() {
  CandidateModel sv{"SV", 2, 3, 3.333, 2.73, plan(538, 11, 2)};
  CandidateModel ar{"AR(2)", 2, 3, 3.54, 0.0, plan(538, 11, 2)};
  CandidateModel mean{"Mean", 0, 1, 3.65, 0.0, plan(658, 9, 0)};
  sv.neg_loglik = 100.0;
  sv.n_params = 3;
  ar.neg_loglik = 110.0;
  ar.n_params = 3;
  mean.neg_loglik = 120.0;
  mean.n_params = 1;
  return {sv, ar, mean};
}

SrmOptions table_options() {
  SrmOptions o;
  o.eta = 0.15;
  o.moment_m = std::sqrt(2.0);
  return o;
}

class ZeroRule : public ForecastRule {
 public:
  Vector forecast(const History&) const override { return Vector::Zero(1); }
  Eigen::Index output_dim() const override { return 1; }
};

}  // namespace

TEST_SUITE("srm") {
  TEST_CASE("table trio selects the mean, whatever the input order") {
    auto trio = table_trio();
    std::sort(trio.begin(), trio.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    std::vector<std::string> first;
    do {
      const SrmResult r = srm_select(trio, table_options());
      CHECK(r.winner().name == "Mean");
      std::vector<std::string> names;
      for (const auto& c : r.ranked) names.push_back(c.name);
      if (first.empty()) first = names;
      CHECK(names == first);
      for (const auto& c : r.ranked) CHECK(r.winner().report.total_bound <= c.report.total_bound);
    } while (std::next_permutation(trio.begin(), trio.end(),
                                   [](const auto& a, const auto& b) { return a.name < b.name; }));
    CHECK(first == std::vector<std::string>{"Mean", "AR(2)", "SV"});
  }

  TEST_CASE("reselection is a fixed point") {
    const SrmResult once = srm_select(table_trio(), table_options());
    const SrmResult twice = srm_select(once.ranked, table_options());
    REQUIRE(twice.ranked.size() == once.ranked.size());
    for (std::size_t i = 0; i < once.ranked.size(); ++i) {
      CHECK(twice.ranked[i].name == once.ranked[i].name);
      CHECK(twice.ranked[i].report.total_bound == once.ranked[i].report.total_bound);
    }
  }

  TEST_CASE("single candidate, vcd tie-break and plan selection") {
    auto trio = table_trio();
    CHECK(srm_select({trio[0]}, table_options()).winner().name == "SV");
    CandidateModel a{"A", 2, 5, 1.0, 0.0, plan(538, 11, 2)};
    CandidateModel b{"B", 2, 2, 1.0, 0.0, plan(538, 11, 2)};
    CHECK(srm_select({a, b}, table_options()).winner().name == "B");

    SrmOptions opts = table_options();
    opts.profile = MixingProfile::table({{8, 0.017}, {9, 0.0}});
    opts.n = 11853;
    CandidateModel open{"open", 2, 3, 3.54, 0.0, std::nullopt};
    const SrmResult r = srm_select({open}, opts);
    CHECK(r.winner().report.plan.a == 11);
    CHECK(r.winner().report.plan.mu == 538);
    CHECK_THROWS_AS(srm_select({}, opts), InvalidInput);
    CandidateModel no_plan{"x", 1, 1, 1.0, 0.0, std::nullopt};
    CHECK_THROWS_AS(srm_select({no_plan}, table_options()), InvalidInput);
  }

  TEST_CASE("all trivial still returns a flagged winner") {
    CandidateModel tiny{"tiny", 0, 8, 1.0, 0.0, plan(1, 1, 0)};
    const SrmResult r = srm_select({tiny}, table_options());
    CHECK(r.winner_trivial);
    std::ostringstream out;
    print_srm_table(out, r);
    CHECK(out.str().find('*') != std::string::npos);
  }

  TEST_CASE("AIC column") {
    CHECK(aic(10.0, 3) - aic(10.0, 2) == 2.0);
    const SrmResult r = srm_select(table_trio(), table_options());
    CHECK(r.baseline == "Mean");
    for (std::size_t i = 0; i < r.ranked.size(); ++i) {
      REQUIRE(r.aic_delta[i].has_value());
      if (r.ranked[i].name == "Mean") CHECK(*r.aic_delta[i] == 0.0);
      if (r.ranked[i].name == "SV") CHECK(*r.aic_delta[i] < 0.0);
    }
    std::ostringstream csv;
    write_srm_csv(csv, r);
    CHECK(csv.str().rfind("model,train,aic_delta,bound,selected\n", 0) == 0);
    CHECK(csv.str().find("Mean,3.65,0,4.23995,1") != std::string::npos);
  }
}

TEST_SUITE("true risk oracle") {
  TEST_CASE("zero predictor on a zero-noise process") {
    const Predictor zero(PredictorKind::custom_linear, 0, std::make_shared<ZeroRule>());
    const RiskEstimate r = estimate_true_risk(*iid_gaussian(0.0, 0.0), zero, 10, LossSpec::squared(), 100, 1);
    CHECK(r.mean == 0.0);
    CHECK(r.std_error == 0.0);
  }

  TEST_CASE("white noise and optimal AR(1) forecasts have unit risk") {
    const Predictor zero(PredictorKind::custom_linear, 0, std::make_shared<ZeroRule>());
    const RiskEstimate a = estimate_true_risk(*iid_gaussian(0.0, 1.0), zero, 20, LossSpec::squared(), 4000, 3);
    CHECK(std::abs(a.mean - 1.0) <= 3 * a.std_error);

    LinearFit opt;
    opt.intercept = Vector::Zero(1);
    opt.lags = {Matrix::Constant(1, 1, 0.5)};
    const RiskEstimate b =
        estimate_true_risk(*ar1_process(0.5, 1.0), make_linear_predictor(opt), 30, LossSpec::squared(), 4000, 4);
    CHECK(std::abs(b.mean - 1.0) <= 3 * b.std_error);
  }

  TEST_CASE("errors") {
    const Predictor zero(PredictorKind::custom_linear, 0, std::make_shared<ZeroRule>());
    CHECK_THROWS_AS(estimate_true_risk(*iid_gaussian(0, 1), zero, 10, LossSpec::squared(), 50, 1), InvalidInput);
    LinearFit two;
    two.intercept = Vector::Zero(2);
    two.lags = {Matrix::Identity(2, 2) * 0.1};
    const VarProcess bivariate(two, Matrix::Identity(2, 2));
    CHECK_THROWS_AS(estimate_true_risk(bivariate, zero, 10, LossSpec::squared(), 100, 1), InvalidInput);
  }
}

TEST_SUITE("generators") {
  TEST_CASE("stationary moments") {
    const auto ar = ar1_process(0.9, 1.0);
    CHECK(ar->stationary_cov()(0, 0) == doctest::Approx(1.0 / (1 - 0.81)));
    CHECK(ar->stationary_mean()(0) == 0.0);
    LinearFit c;
    c.intercept = Vector::Constant(1, 1.0);
    c.lags = {Matrix::Constant(1, 1, 0.5), Matrix::Constant(1, 1, 0.2)};
    const VarProcess ar2(c, Matrix::Constant(1, 1, 1.0));
    CHECK(ar2.stationary_mean()(0) == doctest::Approx(1.0 / 0.3));
    const Matrix y = ar2.simulate(200000, 5).values();
    CHECK(y.mean() == doctest::Approx(1.0 / 0.3).epsilon(0.02));
    const double var = (y.array() - y.mean()).square().mean();
    CHECK(var == doctest::Approx(ar2.stationary_cov()(0, 0)).epsilon(0.03));
    CHECK_THROWS_AS(ar1_process(1.0, 1.0), InvalidInput);
  }

  TEST_CASE("moment bound for gaussian losses") {
    CHECK(gaussian_moment_bound(LossSpec::squared(), 0.0, 1.0, 1.0) == doctest::Approx(std::sqrt(3.0)));
    CHECK(gaussian_moment_bound(LossSpec::absolute(), 0.0, 4.0, 1.0) == doctest::Approx(2.0));
    CHECK(gaussian_moment_bound(LossSpec::squared(), 1.0, 1.0) == doctest::Approx(1.1 * std::sqrt(10.0)));
  }
}

TEST_SUITE("coverage") {
  TEST_CASE("binomial helpers") {
    CHECK(binomial_cdf(10, 10, 0.3) == 1.0);
    CHECK(binomial_cdf(0, 3, 0.5) == doctest::Approx(0.125));
    CHECK(binomial_cdf(1, 3, 0.5) == doctest::Approx(0.5));
    CHECK(coverage_consistent(500, 500, 0.85));
    CHECK_FALSE(coverage_consistent(400, 500, 0.85));
  }

  TEST_CASE("small scenario is deterministic and covers") {
    CoverageScenario sc;
    sc.name = "iid";
    sc.process = iid_gaussian(0.0, 1.0);
    sc.model = mean_class();
    sc.n = 200;
    sc.reps = 40;
    sc.eta = 0.5;
    const CoverageResult a = coverage_experiment(sc);
    const CoverageResult b = coverage_experiment(sc);
    CHECK(a.covered == b.covered);
    CHECK(a.mean_slack == b.mean_slack);
    CHECK(a.coverage >= 0.5);
  }

  TEST_CASE("infeasible blocking is reported") {
    CoverageScenario sc;
    sc.process = ar1_process(0.5, 1.0);
    sc.model = ar_class(1);
    sc.profile = MixingProfile::constant(0.5);
    sc.n = 100;
    sc.reps = 5;
    CHECK_THROWS_AS(coverage_experiment(sc), Infeasible);
  }
}
