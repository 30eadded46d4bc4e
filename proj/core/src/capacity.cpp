#include "tsbound/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "tsbound/error.hpp"

namespace tsbound {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) out.push_back(tok);
  return out;
}

int to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw InvalidInput("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInput("bad integer '" + s + "'");
  }
}

}  // namespace

VcDimension VcDimension::finite(int v) {
  if (v < 1) throw InvalidInput("finite VC dimension must be >= 1");
  VcDimension out;
  out.value_ = v;
  return out;
}

int VcDimension::value() const {
  if (!value_) throw Infeasible("no finite bound: the model class has infinite VC dimension");
  return *value_;
}

std::string VcDimension::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("inf");
}

VcDimension vc_dimension(const ModelClassDescriptor& desc) {
  return std::visit(
      overloaded{
          [](const model_class::Mean&) { return VcDimension::finite(1); },
          [](const model_class::Ar& m) {
            if (m.d < 0) throw InvalidInput("ar(d): d must be >= 0");
            return VcDimension::finite(m.d + 1);
          },
          [](const model_class::Var& m) {
            if (m.k < 1 || m.d < 0) throw InvalidInput("var(k,d): need k >= 1, d >= 0");
            return VcDimension::finite(m.k * m.d + 1);
          },
          [](const model_class::Linear& m) {
            if (m.p < 0) throw InvalidInput("linear(p): p must be >= 0");
            return VcDimension::finite(m.p + 1);
          },
          [](const model_class::StateSpaceTruncated& m) {
            if (m.p < 1 || m.d < 0) throw InvalidInput("statespace-truncated(d,p): need p >= 1, d >= 0");
            int v = m.p * m.d + 1;
            if (m.override_vcd) v = std::min(v, *m.override_vcd);
            return VcDimension::finite(v);
          },
          [](const model_class::SineFrequency&) { return VcDimension::infinite(); },
      },
      desc);
}

std::string describe(const ModelClassDescriptor& desc) {
  return std::visit(
      overloaded{
          [](const model_class::Mean&) { return std::string("mean"); },
          [](const model_class::Ar& m) { return "ar(" + std::to_string(m.d) + ")"; },
          [](const model_class::Var& m) {
            return "var(k=" + std::to_string(m.k) + ", d=" + std::to_string(m.d) + ")";
          },
          [](const model_class::Linear& m) { return "linear(" + std::to_string(m.p) + ")"; },
          [](const model_class::StateSpaceTruncated& m) {
            return "statespace-truncated(d=" + std::to_string(m.d) + ", p=" + std::to_string(m.p) + ")";
          },
          [](const model_class::SineFrequency&) { return std::string("sine-frequency"); },
      },
      desc);
}

ModelClassDescriptor parse_model_class(const std::string& text) {
  const auto parts = split_colon(text);
  if (parts.empty()) throw InvalidInput("empty model class");
  const auto& kind = parts[0];
  auto need = [&](std::size_t count) {
    if (parts.size() != count + 1)
      throw InvalidInput("model class '" + text + "' expects " + std::to_string(count) + " argument(s)");
  };
  if (kind == "mean") { need(0); return model_class::Mean{}; }
  if (kind == "ar") { need(1); return model_class::Ar{to_int(parts[1])}; }
  if (kind == "var") { need(2); return model_class::Var{to_int(parts[1]), to_int(parts[2])}; }
  if (kind == "linear") { need(1); return model_class::Linear{to_int(parts[1])}; }
  if (kind == "ss" || kind == "statespace") {
    if (parts.size() == 4)
      return model_class::StateSpaceTruncated{to_int(parts[1]), to_int(parts[2]), to_int(parts[3])};
    need(2);
    return model_class::StateSpaceTruncated{to_int(parts[1]), to_int(parts[2]), std::nullopt};
  }
  if (kind == "sine") { need(0); return model_class::SineFrequency{}; }
  throw InvalidInput("unknown model class '" + text + "'");
}

GrowthBound growth_function_bound(long n, const VcDimension& vcd) {
  if (n < 0) throw InvalidInput("growth_function_bound: n must be >= 0");
  const int h = vcd.value();
  GrowthBound g;
  g.bound = std::pow(static_cast<double>(n) + 1.0, h);
  if (n <= h) g.exact = std::ldexp(1.0, static_cast<int>(n));
  return g;
}

}  // namespace tsbound
