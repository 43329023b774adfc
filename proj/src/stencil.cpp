#include "dsvs/stencil.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dsvs/errors.hpp"

namespace dsvs {

namespace {

std::vector<double> central_weights(int order, int accuracy) {
  if (accuracy == 2) {
    switch (order) {
      case 1: return {-0.5, 0.0, 0.5};
      case 2: return {1.0, -2.0, 1.0};
      case 4: return {1.0, -4.0, 6.0, -4.0, 1.0};
      default: break;
    }
  } else if (accuracy == 4) {
    switch (order) {
      case 1: return {1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0};
      case 2: return {-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0};
      case 4: return {-1.0 / 6.0, 2.0, -13.0 / 2.0, 28.0 / 3.0, -13.0 / 2.0, 2.0, -1.0 / 6.0};
      default: break;
    }
  }
  throw UsageError("no central stencil for derivative order " + std::to_string(order) +
                   " at accuracy " + std::to_string(accuracy));
}

}  // namespace

Stencil::Stencil(int order, int accuracy, double h)
    : order_(order), accuracy_(accuracy), h_(h), weights_(central_weights(order, accuracy)) {
  if (!(h > 0.0) || !std::isfinite(h)) throw UsageError("stencil step must be positive and finite");
}

double fd_derivative(std::span<const double> samples, const Stencil& stencil) {
  const auto w = stencil.weights();
  if (samples.size() != w.size())
    throw UsageError("stencil needs " + std::to_string(w.size()) + " samples, got " +
                     std::to_string(samples.size()));
  double acc = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!std::isfinite(samples[k])) return std::numeric_limits<double>::quiet_NaN();
    acc += w[k] * samples[k];
  }
  return acc / std::pow(stencil.h(), stencil.order());
}

}  // namespace dsvs
