#pragma once

#include <stdexcept>
#include <string>

namespace dsvs {

/// Malformed input: bad arguments, unknown names, unparsable files.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested evaluation is singular or degenerate (f = 0 everywhere on
/// a window, U identically zero, radicand of the wrong sign, ...).
class SingularInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A non-finite integrand encountered by a quadrature rule.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double abscissa)
      : std::runtime_error(what + " at x = " + std::to_string(abscissa)), abscissa_(abscissa) {}
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

}  // namespace dsvs
