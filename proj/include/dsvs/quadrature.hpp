#pragma once

#include <cmath>

#include "dsvs/errors.hpp"

namespace dsvs {

namespace detail {

inline bool all_finite(double v) { return std::isfinite(v); }

template <class T>
  requires requires(const T& t) { t.is_finite(); }
bool all_finite(const T& v) {
  return v.is_finite();
}

}  // namespace detail

/// Composite Simpson rule with n subintervals (rounded up to even, n >= 2).
/// The integrand may return any vector-like type with + and scalar *
/// (doubles or jets). Throws QuadratureError at the first non-finite value.
template <class F>
auto simpson(F&& f, double a, double b, int n) {
  if (n < 2) n = 2;
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  auto eval = [&](int i) {
    const double x = (i == n) ? b : a + i * h;
    auto v = f(x);
    if (!detail::all_finite(v)) throw QuadratureError("non-finite integrand", x);
    return v;
  };
  auto ends = eval(0) + eval(n);
  auto odd = eval(1);
  for (int i = 3; i < n; i += 2) odd = odd + eval(i);
  decltype(odd) even = odd * 0.0;
  for (int i = 2; i < n; i += 2) even = even + eval(i);
  return (ends + 4.0 * odd + 2.0 * even) * (h / 3.0);
}

/// Scalar convenience form.
template <class F>
double quadrature(F&& f, double a, double b, int n) {
  return simpson([&](double x) { return static_cast<double>(f(x)); }, a, b, n);
}

}  // namespace dsvs
