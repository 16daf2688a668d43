#pragma once

#include <stdexcept>
#include <string>

namespace qsl {

// Error taxonomy mirrored by the CLI exit codes:
// parameter/dimension problems -> 2, certification failures -> 3.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& msg) : Error(msg) {}
};

struct CertificationError : Error {
  double failing_point = 0.0;  // grid point where the certificate broke
  CertificationError(const std::string& msg, double x) : Error(msg), failing_point(x) {}
};

struct BudgetError : Error {
  explicit BudgetError(const std::string& msg) : Error(msg) {}
};

}  // namespace qsl
