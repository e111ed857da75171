#pragma once

#include <stdexcept>
#include <string>

namespace gravbath {

/// Bad input: config file syntax, unknown keys, spec invariant violations.
/// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Runtime numerical failure: singular geometry, non-convergent quadrature,
/// out-of-regime closed forms. The CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gravbath
