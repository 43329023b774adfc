#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "dsvs/taylor.hpp"

namespace dsvs {

/// Order-3 jet in (own spatial variable, t). Profiles are evaluated at this
/// order because the amplitude factor sqrt(c0 p_s) needs p_sss.
using ProfileJet = Taylor<2, 3>;

/// One term A exp(K s + L t + theta0) of an exponential-sum profile.
struct ExpTerm {
  double amplitude = 1.0;  // A
  double wavenumber = 1.0;  // K (or G on the eta side)
  double frequency = 0.0;  // L (or H)
  double phase = 0.0;  // theta0

  friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

enum class ProfileFamily {
  exp_sum,  // sum_i A_i exp(K_i s + L_i t + theta_i)
  breather_p,  // 1 + exp(s cos^2 t)
  breather_q,  // exp(s + cos^2 t)
  tan_cos,  // 1 + exp(tan(s) cos t + 1)
  instanton_p,  // e^{s+2t+1} + e^{s+t+1} + e^{-(s^3+1)^{-1}+2t+1}
  instanton_q,  // e^{s+2t+1} + e^{s+t+1}
  custom,
};

std::string_view family_name(ProfileFamily f);
ProfileFamily parse_family(std::string_view name);

/// A profile function p(zeta, t) or q(eta, t), evaluated as jets.
class ProfileFunction {
 public:
  /// Caller-supplied evaluator: receives seeded jets for s and t and
  /// returns the profile jet.
  using Evaluator = std::function<ProfileJet(const ProfileJet& s, const ProfileJet& t)>;

  static ProfileFunction exp_sum(std::vector<ExpTerm> terms);
  static ProfileFunction breather_p();
  static ProfileFunction breather_q();
  static ProfileFunction tan_cos();
  static ProfileFunction instanton_p();
  static ProfileFunction instanton_q();
  /// Poles at `poles`, masked within `pole_margin` of each.
  static ProfileFunction custom(Evaluator evaluator, std::string label = "custom",
                                std::vector<double> poles = {}, double pole_margin = 0.0);

  ProfileFamily family() const { return family_; }
  const std::vector<ExpTerm>& terms() const { return terms_; }
  const std::string& label() const { return label_; }

  /// Jet of order N <= 3 at (s, t).
  template <std::size_t N>
  Taylor<2, N> jet(double s, double t) const {
    static_assert(N <= 3);
    if (family_ == ProfileFamily::custom) {
      const auto full = custom_(ProfileJet::variable(s, 0), ProfileJet::variable(t, 1));
      return full.template truncate<N>();
    }
    return evaluate(Taylor<2, N>::variable(s, 0), Taylor<2, N>::variable(t, 1));
  }

  double value(double s, double t) const { return jet<0>(s, t).value(); }

  /// Distance from s to the nearest pole of the profile (infinity if none).
  double pole_distance(double s) const;
  /// Points closer than this to a pole are masked when sampling fields.
  double pole_margin() const { return pole_margin_; }
  bool near_pole(double s) const { return pole_distance(s) < pole_margin_; }
  /// Poles strictly between a and b, in either order.
  std::vector<double> poles_between(double a, double b) const;

  /// Human-readable formula with parameters.
  std::string describe(std::string_view var) const;

 private:
  explicit ProfileFunction(ProfileFamily f) : family_(f), label_(family_name(f)) {}

  template <class J>
  J evaluate(const J& s, const J& t) const {
    using std::numbers::pi;
    switch (family_) {
      case ProfileFamily::exp_sum: {
        J sum;
        for (const auto& e : terms_)
          sum += e.amplitude * exp(e.wavenumber * s + e.frequency * t + e.phase);
        return sum;
      }
      case ProfileFamily::breather_p: {
        const J c = cos(t);
        return 1.0 + exp(s * (c * c));
      }
      case ProfileFamily::breather_q: {
        const J c = cos(t);
        return exp(s + c * c);
      }
      case ProfileFamily::tan_cos: return 1.0 + exp(tan(s) * cos(t) + 1.0);
      case ProfileFamily::instanton_p: {
        const J cube = s * s * s;
        return exp(s + 2.0 * t + 1.0) + exp(s + t + 1.0) + exp(-1.0 / (cube + 1.0) + 2.0 * t + 1.0);
      }
      case ProfileFamily::instanton_q: return exp(s + 2.0 * t + 1.0) + exp(s + t + 1.0);
      case ProfileFamily::custom: break;
    }
    return J::non_finite();
  }

  ProfileFamily family_;
  std::vector<ExpTerm> terms_;
  Evaluator custom_;
  std::string label_;
  std::vector<double> custom_poles_;
  double pole_margin_ = 0.0;
};

}  // namespace dsvs
