#pragma once

// Truncated multivariate Taylor polynomials ("jets").
//
// A Taylor<V, N> holds the normalized coefficients c_a = (d^a f)(x0) / a! of a
// function of V variables for every multi-index a with |a| <= N. Arithmetic is
// exact truncated polynomial arithmetic, so derivatives obtained from a jet
// carry no truncation error.
//
// Non-finite results (domain errors, guarded divisions) are represented by a
// jet whose coefficients are all NaN. NaN propagates through every operation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

namespace dsvs {

namespace detail {

constexpr std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

template <std::size_t Vars, std::size_t Order>
struct TaylorLayout {
  using Index = std::array<int, Vars>;
  static constexpr std::size_t size = binomial(Vars + Order, Order);

  static constexpr int degree(const Index& a) {
    int d = 0;
    for (int v : a) d += v;
    return d;
  }

  // Graded ordering: all degree-0 entries, then degree 1, ...; within a
  // degree the first variable varies slowest.
  static constexpr std::array<Index, size> indices = [] {
    std::array<Index, size> out{};
    std::size_t n = 0;
    for (int deg = 0; deg <= static_cast<int>(Order); ++deg) {
      std::size_t total = 1;
      for (std::size_t v = 0; v < Vars; ++v) total *= Order + 1;
      for (std::size_t code = total; code-- > 0;) {
        Index a{};
        std::size_t c = code;
        for (std::size_t v = Vars; v-- > 0;) {
          a[v] = static_cast<int>(c % (Order + 1));
          c /= Order + 1;
        }
        if (degree(a) == deg) out[n++] = a;
      }
    }
    return out;
  }();

  static constexpr std::size_t find(const Index& a) {
    for (std::size_t i = 0; i < size; ++i)
      if (indices[i] == a) return i;
    return size;
  }

  struct Term {
    std::size_t lhs, rhs, out;
  };

  static constexpr std::size_t product_terms = [] {
    std::size_t n = 0;
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j)
        if (degree(indices[i]) + degree(indices[j]) <= static_cast<int>(Order)) ++n;
    return n;
  }();

  static constexpr std::array<Term, product_terms> products = [] {
    std::array<Term, product_terms> out{};
    std::size_t n = 0;
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) {
        if (degree(indices[i]) + degree(indices[j]) > static_cast<int>(Order)) continue;
        Index s{};
        for (std::size_t v = 0; v < Vars; ++v) s[v] = indices[i][v] + indices[j][v];
        out[n++] = Term{i, j, find(s)};
      }
    return out;
  }();

  static constexpr double index_factorial(const Index& a) {
    double r = 1.0;
    for (int v : a) r *= factorial(v);
    return r;
  }
};

}  // namespace detail

/// Division guard: |denominator| below kDivisionGuard * (1 + |numerator|)
/// yields a non-finite jet.
inline constexpr double kDivisionGuard = 1e-12;

template <std::size_t Vars, std::size_t Order>
class Taylor {
 public:
  using Layout = detail::TaylorLayout<Vars, Order>;
  using Index = typename Layout::Index;
  static constexpr std::size_t kVars = Vars;
  static constexpr std::size_t kOrder = Order;
  static constexpr std::size_t kSize = Layout::size;

  constexpr Taylor() = default;

  static constexpr Taylor constant(double v) {
    Taylor r;
    r.c_[0] = v;
    return r;
  }

  /// The coordinate function x_var seeded at `value`.
  static constexpr Taylor variable(double value, std::size_t var) {
    Taylor r = constant(value);
    if constexpr (Order > 0) {
      Index a{};
      a[var] = 1;
      r.c_[Layout::find(a)] = 1.0;
    }
    return r;
  }

  static constexpr Taylor non_finite() {
    Taylor r;
    r.c_.fill(std::numeric_limits<double>::quiet_NaN());
    return r;
  }

  constexpr double value() const { return c_[0]; }
  constexpr const std::array<double, kSize>& coefficients() const { return c_; }
  constexpr double& operator[](std::size_t i) { return c_[i]; }
  constexpr double operator[](std::size_t i) const { return c_[i]; }

  constexpr double coefficient(const Index& a) const {
    const std::size_t i = Layout::find(a);
    return i < kSize ? c_[i] : 0.0;
  }
  constexpr void set_coefficient(const Index& a, double v) { c_[Layout::find(a)] = v; }

  /// Partial derivative d^a f at the expansion point.
  constexpr double derivative(const Index& a) const {
    return coefficient(a) * Layout::index_factorial(a);
  }

  bool is_finite() const {
    return std::all_of(c_.begin(), c_.end(), [](double v) { return std::isfinite(v); });
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
  }

  template <std::size_t M>
  constexpr Taylor<Vars, M> truncate() const {
    static_assert(M <= Order);
    Taylor<Vars, M> r;
    for (std::size_t i = 0; i < Taylor<Vars, M>::kSize; ++i) r[i] = c_[i];
    return r;
  }

  /// Jet of the partial derivative with respect to `var`, one order lower.
  constexpr Taylor<Vars, Order - 1> partial(std::size_t var) const
    requires(Order > 0)
  {
    using Lower = Taylor<Vars, Order - 1>;
    Lower r;
    for (std::size_t i = 0; i < Lower::kSize; ++i) {
      Index a = Lower::Layout::indices[i];
      a[var] += 1;
      r[i] = a[var] * c_[Layout::find(a)];
    }
    return r;
  }

  // Named access for the (spatial, t) jets used throughout the solution code.
  constexpr double d1() const requires(Vars == 2 && Order >= 1) { return derivative({1, 0}); }
  constexpr double dt() const requires(Vars == 2 && Order >= 1) { return derivative({0, 1}); }
  constexpr double d11() const requires(Vars == 2 && Order >= 2) { return derivative({2, 0}); }
  constexpr double d1t() const requires(Vars == 2 && Order >= 2) { return derivative({1, 1}); }
  constexpr double dtt() const requires(Vars == 2 && Order >= 2) { return derivative({0, 2}); }

  constexpr Taylor operator-() const {
    Taylor r;
    for (std::size_t i = 0; i < kSize; ++i) r.c_[i] = -c_[i];
    return r;
  }

  constexpr Taylor& operator+=(const Taylor& o) {
    for (std::size_t i = 0; i < kSize; ++i) c_[i] += o.c_[i];
    return *this;
  }
  constexpr Taylor& operator-=(const Taylor& o) {
    for (std::size_t i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  constexpr Taylor& operator+=(double v) {
    c_[0] += v;
    return *this;
  }
  constexpr Taylor& operator-=(double v) {
    c_[0] -= v;
    return *this;
  }
  constexpr Taylor& operator*=(double v) {
    for (double& x : c_) x *= v;
    return *this;
  }
  constexpr Taylor& operator/=(double v) {
    for (double& x : c_) x /= v;
    return *this;
  }
  constexpr Taylor& operator*=(const Taylor& o) {
    Taylor r;
    for (const auto& t : Layout::products) r.c_[t.out] += c_[t.lhs] * o.c_[t.rhs];
    return *this = r;
  }

  friend constexpr Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend constexpr Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend constexpr Taylor operator*(Taylor a, const Taylor& b) { return a *= b; }
  friend constexpr Taylor operator+(Taylor a, double b) { return a += b; }
  friend constexpr Taylor operator+(double a, Taylor b) { return b += a; }
  friend constexpr Taylor operator-(Taylor a, double b) { return a -= b; }
  friend constexpr Taylor operator-(double a, const Taylor& b) { return -b + a; }
  friend constexpr Taylor operator*(Taylor a, double b) { return a *= b; }
  friend constexpr Taylor operator*(double a, Taylor b) { return b *= a; }
  friend constexpr Taylor operator/(Taylor a, double b) { return a /= b; }

 private:
  std::array<double, kSize> c_{};
};

/// Order-2 jet in (own spatial variable, t): value, d1, dt, d11, d1t, dtt.
using Jet = Taylor<2, 2>;

/// f(a) given the derivatives f^(k)(a.value()), k = 0..N, by truncated
/// Taylor composition (Horner in a - a.value()).
template <std::size_t V, std::size_t N>
Taylor<V, N> compose(const Taylor<V, N>& a, const std::array<double, N + 1>& derivs) {
  Taylor<V, N> h = a;
  h[0] = 0.0;
  Taylor<V, N> r = Taylor<V, N>::constant(derivs[N] / detail::factorial(static_cast<int>(N)));
  for (std::size_t k = N; k-- > 0;) {
    r *= h;
    r += derivs[k] / detail::factorial(static_cast<int>(k));
  }
  if (!std::isfinite(a.value())) return Taylor<V, N>::non_finite();
  return r;
}

template <std::size_t V, std::size_t N>
Taylor<V, N> exp(const Taylor<V, N>& a) {
  std::array<double, N + 1> d;
  d.fill(std::exp(a.value()));
  return compose(a, d);
}

template <std::size_t V, std::size_t N>
Taylor<V, N> log(const Taylor<V, N>& a) {
  const double x = a.value();
  if (!(x > 0.0)) return Taylor<V, N>::non_finite();
  std::array<double, N + 1> d;
  d[0] = std::log(x);
  double p = 1.0;  // (-1)^(k-1) (k-1)! / x^k
  for (std::size_t k = 1; k <= N; ++k) {
    p = (k == 1) ? 1.0 / x : p * (-static_cast<double>(k - 1)) / x;
    d[k] = p;
  }
  return compose(a, d);
}

/// a^k for real exponent k; requires a.value() > 0 unless k is a
/// non-negative integer.
template <std::size_t V, std::size_t N>
Taylor<V, N> pow(const Taylor<V, N>& a, double k) {
  const double x = a.value();
  const bool integral = k >= 0.0 && std::floor(k) == k;
  if (!integral && !(x > 0.0)) return Taylor<V, N>::non_finite();
  std::array<double, N + 1> d;
  double falling = 1.0;
  for (std::size_t j = 0; j <= N; ++j) {
    const double e = k - static_cast<double>(j);
    d[j] = (falling == 0.0) ? 0.0 : falling * std::pow(x, e);
    falling *= e;
  }
  return compose(a, d);
}

/// sqrt with an exact zero jet mapping to zero; any other jet needs a
/// positive value.
template <std::size_t V, std::size_t N>
Taylor<V, N> sqrt(const Taylor<V, N>& a) {
  if (a.is_zero()) return a;
  if (!(a.value() > 0.0)) return Taylor<V, N>::non_finite();
  return pow(a, 0.5);
}

template <std::size_t V, std::size_t N>
Taylor<V, N> sin(const Taylor<V, N>& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  const std::array<double, 4> cycle{s, c, -s, -c};
  std::array<double, N + 1> d;
  for (std::size_t k = 0; k <= N; ++k) d[k] = cycle[k % 4];
  return compose(a, d);
}

template <std::size_t V, std::size_t N>
Taylor<V, N> cos(const Taylor<V, N>& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  const std::array<double, 4> cycle{c, -s, -c, s};
  std::array<double, N + 1> d;
  for (std::size_t k = 0; k <= N; ++k) d[k] = cycle[k % 4];
  return compose(a, d);
}

template <std::size_t V, std::size_t N>
Taylor<V, N> reciprocal(const Taylor<V, N>& b) {
  const double x = b.value();
  if (x == 0.0 || !std::isfinite(x)) return Taylor<V, N>::non_finite();
  std::array<double, N + 1> d;
  double p = 1.0 / x;
  for (std::size_t k = 0; k <= N; ++k) {
    d[k] = p;
    p *= -static_cast<double>(k + 1) / x;
  }
  return compose(b, d);
}

template <std::size_t V, std::size_t N>
Taylor<V, N> operator/(const Taylor<V, N>& a, const Taylor<V, N>& b) {
  if (std::abs(b.value()) < kDivisionGuard * (1.0 + std::abs(a.value())))
    return Taylor<V, N>::non_finite();
  return a * reciprocal(b);
}

template <std::size_t V, std::size_t N>
Taylor<V, N> operator/(double a, const Taylor<V, N>& b) {
  return Taylor<V, N>::constant(a) / b;
}

/// tan, non-finite within kDivisionGuard of a pole.
template <std::size_t V, std::size_t N>
Taylor<V, N> tan(const Taylor<V, N>& a) {
  return sin(a) / cos(a);
}

/// Embed a (spatial, t) jet into the (zeta, eta, t) space: the spatial
/// variable goes to `slot` (0 = zeta, 1 = eta), t goes to variable 2.
template <std::size_t N>
Taylor<3, N> embed(const Taylor<2, N>& j, std::size_t slot) {
  Taylor<3, N> r;
  for (std::size_t i = 0; i < Taylor<2, N>::kSize; ++i) {
    const auto& a = Taylor<2, N>::Layout::indices[i];
    typename Taylor<3, N>::Index b{};
    b[slot] = a[0];
    b[2] = a[1];
    r.set_coefficient(b, j[i]);
  }
  return r;
}

/// The slice of a (spatial, t) jet at zero spatial offset: a jet in t alone.
template <std::size_t N>
Taylor<1, N> time_slice(const Taylor<2, N>& j) {
  Taylor<1, N> r;
  for (std::size_t k = 0; k <= N; ++k) r.set_coefficient({static_cast<int>(k)}, j.coefficient({0, static_cast<int>(k)}));
  return r;
}

/// The (spatial, t) jet F with dF/ds = `gradient` (truncated) and
/// F(s0, t) = `integrated_slice`.
template <std::size_t N, std::size_t M>
Taylor<2, N> antiderivative(const Taylor<2, M>& gradient, const Taylor<1, N>& integrated_slice) {
  static_assert(M + 1 >= N);
  Taylor<2, N> r;
  for (std::size_t i = 0; i < Taylor<2, N>::kSize; ++i) {
    const auto& a = Taylor<2, N>::Layout::indices[i];
    if (a[0] == 0)
      r[i] = integrated_slice.coefficient({a[1]});
    else
      r[i] = gradient.coefficient({a[0] - 1, a[1]}) / a[0];
  }
  return r;
}

}  // namespace dsvs
