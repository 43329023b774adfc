#pragma once

#include <span>
#include <vector>

namespace dsvs {

/// Central finite-difference stencil for the derivative of a given order
/// (1, 2 or 4) at a given accuracy (2 or 4) on a uniform step h.
class Stencil {
 public:
  Stencil(int order, int accuracy, double h);

  int order() const { return order_; }
  int accuracy() const { return accuracy_; }
  double h() const { return h_; }

  /// Number of samples, centred: offsets -half()..half().
  int width() const { return static_cast<int>(weights_.size()); }
  int half() const { return width() / 2; }

  /// Weights multiplying f(x + k h) for k = -half()..half(), before the
  /// division by h^order.
  std::span<const double> weights() const { return weights_; }

  Stencil with_step(double h) const { return Stencil(order_, accuracy_, h); }

 private:
  int order_;
  int accuracy_;
  double h_;
  std::vector<double> weights_;
};

/// Default steps: 1e-3 for second derivatives, 1e-2 for fourth derivatives.
inline constexpr double kDefaultStepSecond = 1e-3;
inline constexpr double kDefaultStepFourth = 1e-2;

/// Applies the stencil to samples f(x0 + k h), k = -half..half. A non-finite
/// sample produces NaN. Throws UsageError on a size mismatch.
double fd_derivative(std::span<const double> samples, const Stencil& stencil);

}  // namespace dsvs
