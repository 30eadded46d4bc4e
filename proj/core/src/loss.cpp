#include "tsbound/loss.hpp"

#include <cmath>

#include "tsbound/error.hpp"

namespace tsbound {

LossSpec::LossSpec(LossKind kind, std::optional<double> bound_k, std::optional<double> moment_m)
    : kind_(kind), bound_k_(bound_k), moment_m_(moment_m) {
  if (bound_k_ && !(*bound_k_ > 0.0)) throw InvalidInput("LossSpec: K must be positive");
  if (moment_m_ && !(*moment_m_ > 0.0)) throw InvalidInput("LossSpec: M must be positive");
}

double LossSpec::operator()(const Vector& residual) const {
  switch (kind_) {
    case LossKind::squared:
      return residual.squaredNorm();
    case LossKind::absolute:
      return residual.lpNorm<1>();
    case LossKind::euclidean_norm:
      return residual.norm();
  }
  return 0.0;
}

double LossSpec::operator()(double residual) const {
  return kind_ == LossKind::squared ? residual * residual : std::abs(residual);
}

double LossSpec::of_matrix(const Matrix& weights) const {
  return (*this)(operator_norm(weights));
}

double loss_eval(const LossSpec& loss, const Vector& residual, Eigen::Index expected_dim) {
  if (residual.size() != expected_dim)
    throw InvalidInput("loss_eval: residual has dimension " + std::to_string(residual.size()) +
                       ", series has " + std::to_string(expected_dim));
  return loss(residual);
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "squared") return LossKind::squared;
  if (name == "absolute") return LossKind::absolute;
  if (name == "euclidean" || name == "euclidean-norm" || name == "norm")
    return LossKind::euclidean_norm;
  throw InvalidInput("unknown loss '" + std::string(name) + "'");
}

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::squared: return "squared";
    case LossKind::absolute: return "absolute";
    case LossKind::euclidean_norm: return "euclidean-norm";
  }
  return "?";
}

}  // namespace tsbound
