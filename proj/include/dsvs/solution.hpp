#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "dsvs/profile.hpp"
#include "dsvs/time_function.hpp"

namespace dsvs {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Constants a0..a3 of f = a0 + a1 p + a2 q + a3 p q.
class SeparationCoefficients {
 public:
  SeparationCoefficients(double a0, double a1, double a2, double a3);

  double a0() const { return a0_; }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double a3() const { return a3_; }
  /// a0 a3 - a1 a2.
  double det() const { return det_; }

  friend bool operator==(const SeparationCoefficients&, const SeparationCoefficients&) = default;

 private:
  double a0_, a1_, a2_, a3_;
  double det_;
};

/// Dispersion/nonlinearity beta(t), gain gamma(t) and the free separation
/// functions c0, c3, c4.
struct CoefficientFunctions {
  TimeFunction beta{1.0};
  TimeFunction gamma{0.0};
  TimeFunction c0{1.0};
  TimeFunction c3{0.0};
  TimeFunction c4{0.0};

  friend bool operator==(const CoefficientFunctions&, const CoefficientFunctions&) = default;
};

/// Everything needed to evaluate one separated solution. Immutable.
class SolutionSpec {
 public:
  SolutionSpec(SeparationCoefficients coeffs, ProfileFunction p, ProfileFunction q,
               CoefficientFunctions funcs = {}, int delta1 = 1, int delta2 = 1);

  const SeparationCoefficients& coeffs() const { return coeffs_; }
  const ProfileFunction& p() const { return p_; }
  const ProfileFunction& q() const { return q_; }
  const CoefficientFunctions& funcs() const { return funcs_; }
  int delta1() const { return delta1_; }
  int delta2() const { return delta2_; }

  SolutionSpec with_funcs(CoefficientFunctions funcs) const;
  SolutionSpec with_signs(int delta1, int delta2) const;

 private:
  SeparationCoefficients coeffs_;
  ProfileFunction p_;
  ProfileFunction q_;
  CoefficientFunctions funcs_;
  int delta1_;
  int delta2_;
};

/// A point (x, y, t) and its rotated coordinates zeta = (x - y)/sqrt2,
/// eta = (x + y)/sqrt2.
struct CoordinatePoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;

  double zeta() const { return (x - y) * kInvSqrt2; }
  double eta() const { return (x + y) * kInvSqrt2; }

  static CoordinatePoint from_rotated(double zeta, double eta, double t) {
    return {(zeta + eta) * kInvSqrt2, (eta - zeta) * kInvSqrt2, t};
  }
};

/// Rectangle in (x, y), optionally restricted to the diamond
/// |zeta| < b, |eta| < b.
struct Window {
  double x0 = -8.0;
  double x1 = 8.0;
  double y0 = -8.0;
  double y1 = 8.0;
  std::optional<double> rotated_bound;

  bool contains(double x, double y) const;
  std::string to_string() const;
  /// "x0:x1:y0:y1".
  static Window parse(const std::string& text);

  friend bool operator==(const Window&, const Window&) = default;
};

/// Coordinate of sample i of n on [lo, hi]; mirror-symmetric grids on
/// symmetric intervals map exactly onto their negatives.
double grid_coordinate(double lo, double hi, int i, int n);

}  // namespace dsvs
