#pragma once

#include <stdexcept>
#include <string>

namespace spate {

enum class ErrorKind {
  InvalidArgument,  // bad caller input (CLI exit 2)
  Data,             // bad file / dataset content (CLI exit 3)
  Capacity,         // qubit budget exceeded (CLI exit 4)
  Degenerate,       // numerically unusable input, e.g. zero-norm vector (CLI exit 3)
  UndefinedMetric,  // metric not defined for this label structure (CLI exit 3)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) {
  throw Error(ErrorKind::InvalidArgument, msg);
}
[[noreturn]] inline void throw_data(const std::string& msg) {
  throw Error(ErrorKind::Data, msg);
}
[[noreturn]] inline void throw_capacity(const std::string& msg) {
  throw Error(ErrorKind::Capacity, msg);
}
[[noreturn]] inline void throw_degenerate(const std::string& msg) {
  throw Error(ErrorKind::Degenerate, msg);
}
[[noreturn]] inline void throw_undefined_metric(const std::string& msg) {
  throw Error(ErrorKind::UndefinedMetric, msg);
}

// Numerical floor used wherever a small epsilon regularizer is needed.
inline constexpr double kEps = 1e-10;

}  // namespace spate
