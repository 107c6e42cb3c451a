#pragma once

#include <stdexcept>
#include <string>

namespace gie {

/// Bad input: precondition violation, malformed scenario, unknown key.
/// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numeric procedure failed to reach its tolerance (quadrature, ODE, root
/// bracketing). The CLI maps this to exit code 1.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gie
