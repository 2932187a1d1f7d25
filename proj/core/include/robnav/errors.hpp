#pragma once

#include <stdexcept>
#include <string>

namespace robnav {

/// Configuration file or CLI argument problem. CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Covariance factorization or root-finding failure. CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace robnav
