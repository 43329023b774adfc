#pragma once

#include <complex>

#include "dsvs/errors.hpp"
#include "dsvs/taylor.hpp"

namespace dsvs {

/// Complex-valued jet stored as real and imaginary parts.
template <std::size_t V, std::size_t N>
struct ComplexTaylor {
  Taylor<V, N> re;
  Taylor<V, N> im;
};

/// Hirota bilinear derivative D^alpha a.b at the expansion point:
///   sum_{beta <= alpha} (-1)^{|alpha - beta|} prod_i C(alpha_i, beta_i)
///     d^beta a * d^{alpha - beta} b.
/// Throws UsageError when |alpha| exceeds the jet order.
template <std::size_t V, std::size_t N>
double hirota(const Taylor<V, N>& a, const Taylor<V, N>& b, const typename Taylor<V, N>::Index& alpha) {
  using Layout = typename Taylor<V, N>::Layout;
  if (Layout::degree(alpha) > static_cast<int>(N))
    throw UsageError("Hirota derivative order exceeds the jet order");
  double sum = 0.0;
  for (std::size_t i = 0; i < Layout::size; ++i) {
    const auto& beta = Layout::indices[i];
    typename Taylor<V, N>::Index rest{};
    double weight = 1.0;
    bool inside = true;
    for (std::size_t v = 0; v < V; ++v) {
      if (beta[v] > alpha[v]) {
        inside = false;
        break;
      }
      rest[v] = alpha[v] - beta[v];
      weight *= static_cast<double>(detail::binomial(static_cast<std::size_t>(alpha[v]), static_cast<std::size_t>(beta[v])));
      if (rest[v] % 2 != 0) weight = -weight;
    }
    if (!inside) continue;
    sum += weight * a.derivative(beta) * b.derivative(rest);
  }
  return sum;
}

/// D_x^m D_t^n a.b for jets in (x, t).
template <std::size_t N>
double hirota(const Taylor<2, N>& a, const Taylor<2, N>& b, int m, int n) {
  return hirota(a, b, typename Taylor<2, N>::Index{m, n});
}

/// Bilinear in each argument: complex a against real b.
template <std::size_t V, std::size_t N>
std::complex<double> hirota(const ComplexTaylor<V, N>& a, const Taylor<V, N>& b,
                            const typename Taylor<V, N>::Index& alpha) {
  return {hirota(a.re, b, alpha), hirota(a.im, b, alpha)};
}

}  // namespace dsvs
