#include "dsvs/solution.hpp"

#include <charconv>
#include <cstdio>
#include <vector>

#include "dsvs/errors.hpp"

namespace dsvs {

SeparationCoefficients::SeparationCoefficients(double a0, double a1, double a2, double a3)
    : a0_(a0), a1_(a1), a2_(a2), a3_(a3), det_(a0 * a3 - a1 * a2) {
  if (!std::isfinite(a0) || !std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(a3))
    throw UsageError("separation coefficients a0..a3 must be finite");
}

SolutionSpec::SolutionSpec(SeparationCoefficients coeffs, ProfileFunction p, ProfileFunction q,
                           CoefficientFunctions funcs, int delta1, int delta2)
    : coeffs_(coeffs), p_(std::move(p)), q_(std::move(q)), funcs_(funcs), delta1_(delta1), delta2_(delta2) {
  if (delta1 * delta1 != 1 || delta2 * delta2 != 1) throw UsageError("delta1 and delta2 must be +1 or -1");
}

SolutionSpec SolutionSpec::with_funcs(CoefficientFunctions funcs) const {
  return SolutionSpec(coeffs_, p_, q_, funcs, delta1_, delta2_);
}

SolutionSpec SolutionSpec::with_signs(int delta1, int delta2) const {
  return SolutionSpec(coeffs_, p_, q_, funcs_, delta1, delta2);
}

bool Window::contains(double x, double y) const {
  if (x < x0 || x > x1 || y < y0 || y > y1) return false;
  if (rotated_bound) {
    const double z = (x - y) * kInvSqrt2;
    const double e = (x + y) * kInvSqrt2;
    if (std::abs(z) >= *rotated_bound || std::abs(e) >= *rotated_bound) return false;
  }
  return true;
}

std::string Window::to_string() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.17g:%.17g:%.17g:%.17g", x0, x1, y0, y1);
  std::string s = buf;
  if (rotated_bound) {
    std::snprintf(buf, sizeof buf, " (|zeta|,|eta| < %.17g)", *rotated_bound);
    s += buf;
  }
  return s;
}

Window Window::parse(const std::string& text) {
  std::vector<double> v;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    const std::string part = text.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
    double d = 0.0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), d);
    if (ec != std::errc() || ptr != part.data() + part.size())
      throw UsageError("window must be x0:x1:y0:y1, got '" + text + "'");
    v.push_back(d);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3]))
    throw UsageError("window must be x0:x1:y0:y1 with x0 < x1 and y0 < y1, got '" + text + "'");
  return Window{v[0], v[1], v[2], v[3], std::nullopt};
}

double grid_coordinate(double lo, double hi, int i, int n) {
  if (n < 2) return 0.5 * (lo + hi);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  return mid + half * static_cast<double>(2 * i - (n - 1)) / static_cast<double>(n - 1);
}

}  // namespace dsvs
