#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tsbound/linalg.hpp"

namespace tsbound {

enum class LossKind { squared, absolute, euclidean_norm };

/// A loss of the prediction difference, l(y - y'), with the constants the bounds need.
///
/// `delta` is the modified-triangle constant: l(x + y) <= delta (l(x) + l(y)). It is fixed
/// by the kind (2 for squared, 1 for the norms). `bound_k` is an optional uniform bound on
/// the loss and `moment_m` an optional bound on sqrt(E[l^2]).
class LossSpec {
 public:
  explicit LossSpec(LossKind kind, std::optional<double> bound_k = std::nullopt,
                    std::optional<double> moment_m = std::nullopt);

  static LossSpec squared() { return LossSpec(LossKind::squared); }
  static LossSpec absolute() { return LossSpec(LossKind::absolute); }
  static LossSpec euclidean() { return LossSpec(LossKind::euclidean_norm); }

  LossKind kind() const noexcept { return kind_; }
  double delta() const noexcept { return kind_ == LossKind::squared ? 2.0 : 1.0; }
  bool submultiplicative() const noexcept { return true; }
  const std::optional<double>& bound_k() const noexcept { return bound_k_; }
  const std::optional<double>& moment_m() const noexcept { return moment_m_; }

  /// l(r). squared: |r|_2^2, absolute: |r|_1, euclidean: |r|_2.
  double operator()(const Vector& residual) const;
  double operator()(double residual) const;

  /// Loss of a weight matrix, taken through its operator 2-norm: squared gives |A|^2,
  /// the norm kinds give |A|. Agrees with the scalar loss on 1x1 matrices.
  double of_matrix(const Matrix& weights) const;

 private:
  LossKind kind_;
  std::optional<double> bound_k_;
  std::optional<double> moment_m_;
};

/// l(residual), checking that the residual has the series dimension.
double loss_eval(const LossSpec& loss, const Vector& residual, Eigen::Index expected_dim);

LossKind parse_loss_kind(std::string_view name);
std::string_view to_string(LossKind kind);

}  // namespace tsbound
