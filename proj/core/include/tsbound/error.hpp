#pragma once

#include <stdexcept>
#include <string>

namespace tsbound {

/// Error categories. The numeric values double as CLI exit codes.
enum class ErrorCode : int {
  invalid_input = 2,
  infeasible = 3,
  non_convergence = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Bad arguments, malformed files, dimension mismatches, domain violations.
class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorCode::invalid_input, what) {}
};

/// The requested bound cannot be formed (eta' <= 0, no blocking plan, no finite VC dimension).
class Infeasible : public Error {
 public:
  explicit Infeasible(const std::string& what)
      : Error(ErrorCode::infeasible, what) {}
};

class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& what)
      : Error(ErrorCode::non_convergence, what) {}
};

}  // namespace tsbound
