#include "tsbound/lambert.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tsbound/error.hpp"

namespace tsbound {

namespace {

constexpr double kInvE = 0.36787944117144232159552377016146087;  // 1/e

}  // namespace

double lambert_w_minus1(double x) {
  if (!(x < 0.0) || std::isnan(x))
    throw InvalidInput("lambert_w_minus1: argument must lie in [-1/e, 0), got " +
                       std::to_string(x));
  // Slack of a few ulps so that -exp(-1) computed by the caller is accepted.
  const double branch_gap = 1.0 + std::numbers::e * x;
  if (branch_gap < -4e-16)
    throw InvalidInput("lambert_w_minus1: argument below -1/e");
  if (branch_gap <= 0.0 || x <= -kInvE) return -1.0;

  double w;
  if (branch_gap < 0.25) {
    const double p = -std::sqrt(2.0 * branch_gap);
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
  } else {
    const double l1 = std::log(-x);
    w = l1 - std::log(-l1);
  }
  if (w > -1.0) w = -1.0 - 1e-12;

  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double fp = ew * wp1;
    const double step = f / (fp - (w + 2.0) * f / (2.0 * wp1));
    double next = w - step;
    if (next > -1.0) next = 0.5 * (w - 1.0);  // stay on the lower branch
    const bool done = std::abs(next - w) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w);
    w = next;
    if (done) break;
  }
  return w;
}

}  // namespace tsbound
