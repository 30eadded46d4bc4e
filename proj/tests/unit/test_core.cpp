#include <doctest.h>

#include <sstream>

#include "tsbound/error.hpp"
#include "tsbound/forecasters.hpp"
#include "tsbound/loss.hpp"
#include "tsbound/predictor.hpp"
#include "tsbound/series.hpp"

using namespace tsbound;

namespace {

/// y_hat_{i+1} = y_i, the naive random-walk forecast.
class LastValueRule : public ForecastRule {
 public:
  Vector forecast(const History& h) const override { return h.bottomRows(1).transpose(); }
  Eigen::Index output_dim() const override { return 1; }
};

class ScaledRule : public ForecastRule {
 public:
  explicit ScaledRule(double c) : c_(c) {}
  Vector forecast(const History& h) const override {
    return c_ * 0.5 * (h.bottomRows(1).transpose() + h.topRows(1).transpose());
  }
  Eigen::Index output_dim() const override { return 1; }

 private:
  double c_;
};

Predictor last_value() {
  return Predictor(PredictorKind::custom_linear, 1, std::make_shared<LastValueRule>());
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("construction validates shape, finiteness and index order") {
    CHECK_THROWS_AS(TimeSeries(Matrix(0, 1)), InvalidInput);
    CHECK_THROWS_AS(TimeSeries(Matrix(3, 0)), InvalidInput);
    Matrix bad = Matrix::Ones(3, 1);
    bad(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(TimeSeries{bad}, InvalidInput);
    CHECK_THROWS_AS(TimeSeries(Matrix::Ones(2, 1), std::vector<std::string>{"2001", "2001"}),
                    InvalidInput);
    CHECK_THROWS_AS(TimeSeries(Matrix::Ones(2, 1), std::vector<std::string>{"2001"}), InvalidInput);
    CHECK_NOTHROW(TimeSeries(Matrix::Ones(2, 1), std::vector<std::string>{"2001", "2002"}));
  }

  TEST_CASE("1-based access, head and slice") {
    const TimeSeries s = TimeSeries::scalar({1, 2, 3, 4});
    CHECK(s.size() == 4);
    CHECK(s.dim() == 1);
    CHECK(s.at(1)(0) == 1.0);
    CHECK(s.at(4)(0) == 4.0);
    CHECK_THROWS_AS(s.at(0), InvalidInput);
    CHECK_THROWS_AS(s.at(5), InvalidInput);
    CHECK(s.head(2).values()(1, 0) == 2.0);
    CHECK(s.slice(1, 2).values()(0, 0) == 2.0);
  }

  TEST_CASE("csv round trip with and without a date column") {
    std::istringstream dated("date,a,b\n2001-01-01,1.5,2\n2001-02-01,3,4.25\n");
    const TimeSeries s = read_series_csv(dated);
    REQUIRE(s.index().has_value());
    CHECK(s.dim() == 2);
    CHECK(s.values()(1, 1) == 4.25);
    CHECK(s.column_names() == std::vector<std::string>{"a", "b"});

    std::ostringstream out;
    write_series_csv(out, s);
    std::istringstream back(out.str());
    const TimeSeries t = read_series_csv(back);
    CHECK(t.values() == s.values());
    CHECK(*t.index() == *s.index());

    std::istringstream plain("y\n1\n2\n3\n");
    const TimeSeries u = read_series_csv(plain);
    CHECK_FALSE(u.index().has_value());
    CHECK(u.size() == 3);
  }

  TEST_CASE("csv errors") {
    std::istringstream ragged("a,b\n1,2\n3\n");
    CHECK_THROWS_AS(read_series_csv(ragged), InvalidInput);
    std::istringstream junk("a\n1\nx2\n");
    CHECK_THROWS_AS(read_series_csv(junk), InvalidInput);
    std::istringstream empty("a\n");
    CHECK_THROWS_AS(read_series_csv(empty), InvalidInput);
  }
}

TEST_SUITE("loss") {
  TEST_CASE("spec values") {
    CHECK(LossSpec::squared()(Vector::Zero(1)) == 0.0);
    Vector r(2);
    r << 3, 4;
    CHECK(LossSpec::euclidean()(r) == doctest::Approx(5.0));
    CHECK(LossSpec::squared()(Vector::Constant(1, 2.0)) == 4.0);
  }

  TEST_CASE("triangle constants and nonnegativity") {
    CHECK(LossSpec::squared().delta() == 2.0);
    CHECK(LossSpec::absolute().delta() == 1.0);
    CHECK(LossSpec::euclidean().delta() == 1.0);
    for (double x : {-3.0, -0.5, 0.0, 0.25, 7.0}) {
      CHECK(LossSpec::squared()(x) == doctest::Approx(LossSpec::absolute()(x) * LossSpec::absolute()(x)));
      CHECK(LossSpec::absolute()(x) >= 0.0);
    }
  }

  TEST_CASE("modified triangle inequality holds on samples") {
    for (const auto& loss : {LossSpec::squared(), LossSpec::absolute(), LossSpec::euclidean()})
      for (double x : {-2.0, -0.3, 0.0, 1.0, 4.0})
        for (double y : {-1.5, 0.0, 0.7, 3.0})
          CHECK(loss(x + y) <= loss.delta() * (loss(x) + loss(y)) + 1e-12);
  }

  TEST_CASE("dimension mismatch and names") {
    CHECK_THROWS_AS(loss_eval(LossSpec::squared(), Vector::Zero(2), 1), InvalidInput);
    CHECK(parse_loss_kind("absolute") == LossKind::absolute);
    CHECK_THROWS_AS(parse_loss_kind("huber"), InvalidInput);
    CHECK_THROWS_AS(LossSpec(LossKind::squared, -1.0), InvalidInput);
  }

  TEST_CASE("matrix loss agrees with scalar loss on 1x1") {
    CHECK(LossSpec::squared().of_matrix(Matrix::Constant(1, 1, -3.0)) == doctest::Approx(9.0));
    CHECK(LossSpec::absolute().of_matrix(Matrix::Constant(1, 1, -3.0)) == doctest::Approx(3.0));
  }
}

TEST_SUITE("training error") {
  TEST_CASE("hand evaluation: (1,2,3,4), last-value forecast, d=1") {
    const TimeSeries s = TimeSeries::scalar({1, 2, 3, 4});
    CHECK(training_error(s, last_value(), 1, LossSpec::squared()) == doctest::Approx(1.5));
    CHECK(training_error(s, last_value(), 1, LossSpec::squared(), TrainingNormalization::n_minus_d) ==
          doctest::Approx(1.0));
  }

  TEST_CASE("constant series with its mean gives zero") {
    const TimeSeries s = TimeSeries::scalar({2, 2, 2, 2, 2});
    const Predictor f = make_linear_predictor(fit_mean(s));
    CHECK(training_error(s, f, 0, LossSpec::squared()) == 0.0);
  }

  TEST_CASE("index relabelling does not matter") {
    const Matrix v = (Matrix(5, 1) << 1, 4, 2, 8, 5).finished();
    const TimeSeries a(v);
    const TimeSeries b(v, std::vector<std::string>{"a", "b", "c", "d", "e"});
    CHECK(training_error(a, last_value(), 1, LossSpec::absolute()) ==
          training_error(b, last_value(), 1, LossSpec::absolute()));
  }

  TEST_CASE("scaling data and forecasts by c scales squared by c^2 and absolute by |c|") {
    const Matrix v = (Matrix(6, 1) << 1, -4, 2, 8, 5, 0.5).finished();
    const double c = -2.5;
    const TimeSeries a(v);
    const TimeSeries b(Matrix(c * v));
    const Predictor f(PredictorKind::custom_linear, 1, std::make_shared<ScaledRule>(1.0));
    for (std::size_t d : {1, 2, 3}) {
      CHECK(training_error(b, f, d, LossSpec::squared()) ==
            doctest::Approx(c * c * training_error(a, f, d, LossSpec::squared())));
      CHECK(training_error(b, f, d, LossSpec::absolute()) ==
            doctest::Approx(std::abs(c) * training_error(a, f, d, LossSpec::absolute())));
    }
  }

  TEST_CASE("preconditions") {
    const TimeSeries s = TimeSeries::scalar({1, 2, 3});
    CHECK_THROWS_AS(training_error(s, last_value(), 2, LossSpec::squared()), InvalidInput);
    const TimeSeries wide(Matrix::Ones(4, 2));
    CHECK_THROWS_AS(training_error(wide, last_value(), 1, LossSpec::squared()), InvalidInput);
  }

  TEST_CASE("forecasts are causal") {
    const Matrix v = (Matrix(6, 1) << 1, 2, 3, 4, 5, 6).finished();
    Matrix w = v;
    w(5, 0) = 100.0;
    const Predictor f = last_value();
    const Matrix ra = one_step_residuals(TimeSeries(v), f, 1);
    const Matrix rb = one_step_residuals(TimeSeries(w), f, 1);
    CHECK(ra.topRows(3) == rb.topRows(3));
  }
}
