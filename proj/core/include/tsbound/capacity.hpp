#pragma once

#include <optional>
#include <string>
#include <variant>

namespace tsbound {

namespace model_class {
struct Mean {};
struct Ar { int d; };
struct Var { int k; int d; };
struct Linear { int p; };
/// Growing-memory state-space predictor truncated to d lags of a p-dimensional series.
/// `override_vcd` caps the implied value when the caller knows a smaller one.
struct StateSpaceTruncated {
  int d;
  int p;
  std::optional<int> override_vcd;
};
struct SineFrequency {};
}  // namespace model_class

using ModelClassDescriptor =
    std::variant<model_class::Mean, model_class::Ar, model_class::Var, model_class::Linear,
                 model_class::StateSpaceTruncated, model_class::SineFrequency>;

/// VC dimension: a finite count or infinity.
class VcDimension {
 public:
  static VcDimension finite(int v);
  static VcDimension infinite() { return VcDimension(); }

  bool is_finite() const noexcept { return value_.has_value(); }
  /// Throws Infeasible ("no finite bound") when infinite.
  int value() const;
  std::string to_string() const;

  friend bool operator==(const VcDimension&, const VcDimension&) = default;

 private:
  VcDimension() = default;
  std::optional<int> value_;
};

/// ar(d) -> d+1, var(k,d) -> kd+1, linear(p) -> p+1, mean -> 1,
/// statespace-truncated(d,p) -> min(pd+1, override), sine-frequency -> infinite.
VcDimension vc_dimension(const ModelClassDescriptor& desc);

std::string describe(const ModelClassDescriptor& desc);

/// "mean", "ar:2", "var:4:1" (k then d), "linear:3", "ss:2:1" (d then p), "sine".
ModelClassDescriptor parse_model_class(const std::string& text);

struct GrowthBound {
  /// (n+1)^vcd
  double bound = 0.0;
  /// 2^n, reported when n <= vcd (every labelling is achievable).
  std::optional<double> exact;
};

GrowthBound growth_function_bound(long n, const VcDimension& vcd);

}  // namespace tsbound
