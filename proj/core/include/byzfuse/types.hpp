// ============================================================================
// types.hpp -- shared vocabulary types and error classes
// ============================================================================
#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace byzfuse {

/// A binary decision or report. Always 0 or 1.
using Bit = std::uint8_t;

/// Detection / false-alarm pair of a binary decision rule.
struct OperatingPoint {
  double pd = 0.0;
  double pf = 0.0;

  friend bool operator==(const OperatingPoint&, const OperatingPoint&) = default;
};

/// Invalid model parameters or a request the model cannot serve
/// (e.g. closed-form ROC on a non-monotone likelihood ratio).
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rejected configuration value. The message always names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Numerical quadrature that failed to reach the requested accuracy.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace byzfuse
