#pragma once

#include <string>

#include "dsvs/taylor.hpp"

namespace dsvs {

/// A real coefficient function of t in one of a few closed forms:
///   constant     a
///   linear       a + b t
///   cosine       a + b cos(w t)
///   exponential  a exp(b t)
class TimeFunction {
 public:
  enum class Kind { constant, linear, cosine, exponential };

  TimeFunction() = default;
  TimeFunction(double c) : a_(c) {}  // NOLINT: constants convert implicitly

  static TimeFunction constant(double a) { return TimeFunction(a); }
  static TimeFunction linear(double a, double b) { return {Kind::linear, a, b, 0.0}; }
  static TimeFunction cosine(double a, double b, double w) { return {Kind::cosine, a, b, w}; }
  static TimeFunction exponential(double a, double b) { return {Kind::exponential, a, b, 0.0}; }

  Kind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double w() const { return w_; }

  double operator()(double t) const { return jet<1, 0>(t, 0).value(); }

  /// The function as a jet in variable `t_var` of a V-variable space.
  template <std::size_t V, std::size_t N>
  Taylor<V, N> jet(double t, std::size_t t_var) const {
    const auto tv = Taylor<V, N>::variable(t, t_var);
    switch (kind_) {
      case Kind::constant: return Taylor<V, N>::constant(a_);
      case Kind::linear: return a_ + b_ * tv;
      case Kind::cosine: return a_ + b_ * cos(w_ * tv);
      case Kind::exponential: return a_ * exp(b_ * tv);
    }
    return Taylor<V, N>::non_finite();
  }

  bool is_constant() const { return kind_ == Kind::constant || (b_ == 0.0); }

  /// Text form used by spec files: "1.5", "linear:a,b", "cos:a,b,w", "exp:a,b".
  std::string to_string() const;
  static TimeFunction parse(const std::string& text);

  friend bool operator==(const TimeFunction&, const TimeFunction&) = default;

 private:
  TimeFunction(Kind k, double a, double b, double w) : kind_(k), a_(a), b_(b), w_(w) {}

  Kind kind_ = Kind::constant;
  double a_ = 0.0;
  double b_ = 0.0;
  double w_ = 0.0;
};

}  // namespace dsvs
