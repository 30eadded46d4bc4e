#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/params.hpp"
#include "tsbound/error.hpp"

using namespace tsbound;
using namespace tsbound::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tsbound_cli_" + name);
}

Params sv_bound() {
  return Params(Json::parse(R"({"train_err": 3.333, "delta_d": 2.73, "mu": 538, "a": 11, "d": 2,
    "n": 11853, "vcd": 3, "eta": 0.15, "moment_m": 1.4142135623730951,
    "profile": {"type": "table", "entries": [[8, 0.017], [9, 0.0]]}})"));
}

}  // namespace

TEST_SUITE("cli params") {
  TEST_CASE("typed access and errors") {
    const Params p(Json::parse(R"({"x": 1.5, "k": 3, "s": "ar:2", "b": true})"));
    CHECK(p.number("x") == 1.5);
    CHECK(p.number("k") == 3.0);
    CHECK(p.integer("k") == 3);
    CHECK(p.text("s") == "ar:2");
    CHECK(p.flag("b"));
    CHECK(p.number("missing", 2.0) == 2.0);
    CHECK_THROWS_AS(p.number("missing"), InvalidInput);
    CHECK_THROWS_AS(p.integer("x"), InvalidInput);
    CHECK_THROWS_AS(p.text("x"), InvalidInput);
    CHECK_THROWS_AS(Params(Json::array()), InvalidInput);
  }

  TEST_CASE("config sections") {
    const auto path = scratch("config.json");
    {
      std::ofstream f(path);
      f << R"({"bound": {"eta": 0.1}, "other": 1})";
    }
    CHECK(load_config_section(path.string(), "bound").at("eta") == 0.1);
    CHECK(load_config_section(path.string(), "srm").contains("other"));
    {
      std::ofstream f(path);
      f << "{not json";
    }
    CHECK_THROWS_AS(load_config_section(path.string(), "bound"), InvalidInput);
    CHECK_THROWS_AS(load_config_section("/nonexistent/x.json", "bound"), InvalidInput);
    std::filesystem::remove(path);
  }

  TEST_CASE("profiles") {
    CHECK(beta_at(profile_from(Params()), 5) == 0.0);
    CHECK(beta_at(profile_from(Params(Json{{"beta_gap", 0.01}})), 5) == 0.01);
    const Json exp = Json::parse(R"({"profile": {"type": "exponential", "c1": 1, "c2": 1}})");
    CHECK(beta_at(profile_from(Params(exp)), 2) == doctest::Approx(std::exp(-2.0)));
    const Json bad = Json::parse(R"({"profile": {"type": "fractal"}})");
    CHECK_THROWS_AS(profile_from(Params(bad)), InvalidInput);
  }
}

TEST_SUITE("cli commands") {
  TEST_CASE("bound reproduces the published report") {
    std::ostringstream out;
    CHECK(run_bound(sv_bound(), out) == 0);
    CHECK(out.str().find("total_bound     7.03679") != std::string::npos);
    CHECK(out.str().find("# bound inputs: ") == 0);
  }

  TEST_CASE("bound exit codes") {
    Params p = sv_bound();
    p.set("vcd", 200);
    p.set("mu", 50);
    std::ostringstream out;
    CHECK(run_bound(p, out) == 3);
    Params q = sv_bound();
    q.set("a", 5);
    q.set("d", 2);
    q.set("profile", Json::parse(R"({"type": "constant", "beta": 0.5})"));
    try {
      run_bound(q, out);
      FAIL("expected an infeasible plan");
    } catch (const std::exception& e) {
      CHECK(exit_code_for(e) == 3);
    }
    CHECK(exit_code_for(InvalidInput("x")) == 2);
    CHECK(exit_code_for(NonConvergence("x")) == 4);
    CHECK(exit_code_for(std::runtime_error("x")) == 2);
  }

  TEST_CASE("bound from a series picks a plan") {
    const auto path = scratch("series.csv");
    {
      std::ofstream f(path);
      f << "y\n";
      double x = 0.0;
      for (int i = 0; i < 400; ++i) f << (x = 0.5 * x + std::sin(i * 1.7)) << '\n';
    }
    Params p(Json{{"series", path.string()}, {"model", "ar:1"}, {"moment_m", 2.0}});
    std::ostringstream out;
    CHECK(run_bound(p, out) == 0);
    CHECK(out.str().find("n               400") != std::string::npos);
    std::ostringstream fit_out;
    CHECK(run_fit(Params(Json{{"series", path.string()}, {"model", "ar:2"}}), fit_out) == 0);
    CHECK(fit_out.str().find("train_err") != std::string::npos);
    std::filesystem::remove(path);
  }

  TEST_CASE("srm on the table trio") {
    const Json cfg = Json::parse(R"j({"eta": 0.15, "moment_m": 1.4142135623730951,
      "profile": {"type": "table", "entries": [[8, 0.017], [9, 0.0]]}, "n": 11853,
      "candidates": [
        {"name": "SV", "vcd": 3, "d": 2, "train_err": 3.333, "delta_d": 2.73, "mu": 538, "a": 11},
        {"name": "AR(2)", "model": "ar:2", "train_err": 3.54, "mu": 538, "a": 11},
        {"name": "Mean", "model": "mean", "train_err": 3.65, "mu": 658, "a": 9}]})j");
    std::ostringstream out;
    CHECK(run_srm(Params(cfg), out) == 0);
    CHECK(out.str().find("selected        Mean") != std::string::npos);
  }

  TEST_CASE("tradeoff, simulate and hpfilter") {
    std::ostringstream grid;
    CHECK(run_tradeoff(Params(Json{{"mu_count", 5}, {"eps_count", 5}}), grid) == 0);
    CHECK(grid.str().find("mu,eps_boundary") != std::string::npos);

    const auto path = scratch("sim.csv");
    std::ostringstream sim;
    CHECK(run_simulate(Params(Json{{"process", "ar1"}, {"n", 50}, {"seed", 3}, {"csv", path.string()}}), sim) == 0);
    std::ostringstream hp;
    CHECK(run_hpfilter(Params(Json{{"series", path.string()}}), hp) == 0);
    CHECK(hp.str().find("y_trend,y_cycle") != std::string::npos);
    std::ostringstream sim2;
    run_simulate(Params(Json{{"process", "ar1"}, {"n", 50}, {"seed", 3}}), sim2);
    std::ifstream back(path);
    std::stringstream first;
    first << back.rdbuf();
    CHECK(sim2.str().find(first.str()) != std::string::npos);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(run_simulate(Params(Json{{"process", "garch"}}), sim), InvalidInput);
  }

  TEST_CASE("fit reports non-convergence with exit code 4") {
    const auto path = scratch("sv.csv");
    {
      std::ofstream f(path);
      f << "r\n";
      for (int i = 1; i <= 300; ++i) f << 0.01 * std::sin(i * 0.37) * (1 + (i % 7)) << '\n';
    }
    std::ostringstream ok;
    const int rc = run_fit(Params(Json{{"series", path.string()}, {"model", "sv"}, {"moment_m", 1.4}}), ok);
    CHECK((rc == 0 || rc == 4));
    CHECK(ok.str().find("delta_d") != std::string::npos);
    std::filesystem::remove(path);
  }
}
