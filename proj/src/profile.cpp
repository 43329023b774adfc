#include "dsvs/profile.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <numbers>

#include "dsvs/errors.hpp"

namespace dsvs {

namespace {

constexpr struct {
  ProfileFamily family;
  std::string_view name;
} kFamilyNames[] = {
    {ProfileFamily::exp_sum, "exp_sum"},         {ProfileFamily::breather_p, "breather_p"},
    {ProfileFamily::breather_q, "breather_q"},   {ProfileFamily::tan_cos, "tan_cos"},
    {ProfileFamily::instanton_p, "instanton_p"}, {ProfileFamily::instanton_q, "instanton_q"},
    {ProfileFamily::custom, "custom"},
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string_view family_name(ProfileFamily f) {
  for (const auto& e : kFamilyNames)
    if (e.family == f) return e.name;
  return "unknown";
}

ProfileFamily parse_family(std::string_view name) {
  for (const auto& e : kFamilyNames)
    if (e.name == name && e.family != ProfileFamily::custom) return e.family;
  throw UsageError("unknown profile family '" + std::string(name) +
                   "' (valid: exp_sum, breather_p, breather_q, tan_cos, instanton_p, instanton_q)");
}

ProfileFunction ProfileFunction::exp_sum(std::vector<ExpTerm> terms) {
  if (terms.empty()) throw UsageError("exp_sum profile needs at least one term");
  for (const auto& e : terms)
    if (!std::isfinite(e.amplitude) || !std::isfinite(e.wavenumber) || !std::isfinite(e.frequency) ||
        !std::isfinite(e.phase))
      throw UsageError("exp_sum profile parameters must be finite");
  ProfileFunction p(ProfileFamily::exp_sum);
  p.terms_ = std::move(terms);
  return p;
}

ProfileFunction ProfileFunction::breather_p() { return ProfileFunction(ProfileFamily::breather_p); }
ProfileFunction ProfileFunction::breather_q() { return ProfileFunction(ProfileFamily::breather_q); }

ProfileFunction ProfileFunction::tan_cos() {
  ProfileFunction p(ProfileFamily::tan_cos);
  p.pole_margin_ = 0.1;
  return p;
}

ProfileFunction ProfileFunction::instanton_p() {
  ProfileFunction p(ProfileFamily::instanton_p);
  p.pole_margin_ = 0.05;
  return p;
}

ProfileFunction ProfileFunction::instanton_q() { return ProfileFunction(ProfileFamily::instanton_q); }

ProfileFunction ProfileFunction::custom(Evaluator evaluator, std::string label, std::vector<double> poles,
                                        double pole_margin) {
  if (!evaluator) throw UsageError("custom profile needs an evaluator");
  ProfileFunction p(ProfileFamily::custom);
  p.custom_ = std::move(evaluator);
  p.label_ = std::move(label);
  p.custom_poles_ = std::move(poles);
  p.pole_margin_ = pole_margin;
  return p;
}

double ProfileFunction::pole_distance(double s) const {
  using std::numbers::pi;
  switch (family_) {
    case ProfileFamily::tan_cos: {
      // poles at pi/2 + k pi
      const double shifted = s - pi / 2;
      const double k = std::round(shifted / pi);
      return std::abs(shifted - k * pi);
    }
    case ProfileFamily::instanton_p: return std::abs(s + 1.0);
    case ProfileFamily::custom: {
      double d = std::numeric_limits<double>::infinity();
      for (double pole : custom_poles_) d = std::min(d, std::abs(s - pole));
      return d;
    }
    default: return std::numeric_limits<double>::infinity();
  }
}

std::vector<double> ProfileFunction::poles_between(double a, double b) const {
  using std::numbers::pi;
  const double lo = std::min(a, b), hi = std::max(a, b);
  std::vector<double> out;
  switch (family_) {
    case ProfileFamily::tan_cos:
      for (double k = std::ceil((lo - pi / 2) / pi); pi / 2 + k * pi < hi; k += 1.0)
        if (pi / 2 + k * pi > lo) out.push_back(pi / 2 + k * pi);
      break;
    case ProfileFamily::instanton_p:
      if (lo < -1.0 && -1.0 < hi) out.push_back(-1.0);
      break;
    case ProfileFamily::custom:
      for (double pole : custom_poles_)
        if (lo < pole && pole < hi) out.push_back(pole);
      break;
    default: break;
  }
  return out;
}

std::string ProfileFunction::describe(std::string_view var) const {
  const std::string v(var);
  switch (family_) {
    case ProfileFamily::exp_sum: {
      std::string out;
      for (const auto& e : terms_) {
        if (!out.empty()) out += " + ";
        out += num(e.amplitude) + "*exp(" + num(e.wavenumber) + "*" + v + " + " + num(e.frequency) +
               "*t + " + num(e.phase) + ")";
      }
      return out;
    }
    case ProfileFamily::breather_p: return "1 + exp(" + v + "*cos(t)^2)";
    case ProfileFamily::breather_q: return "exp(" + v + " + cos(t)^2)";
    case ProfileFamily::tan_cos: return "1 + exp(tan(" + v + ")*cos(t) + 1)";
    case ProfileFamily::instanton_p:
      return "exp(" + v + "+2t+1) + exp(" + v + "+t+1) + exp(-1/(" + v + "^3+1)+2t+1)";
    case ProfileFamily::instanton_q: return "exp(" + v + "+2t+1) + exp(" + v + "+t+1)";
    case ProfileFamily::custom: return label_;
  }
  return {};
}

}  // namespace dsvs
