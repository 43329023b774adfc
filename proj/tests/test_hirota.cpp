#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dsvs/hirota.hpp"

namespace dsvs {
namespace {

using J4 = Taylor<2, 4>;

J4 random_jet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  J4 j;
  for (std::size_t i = 0; i < J4::kSize; ++i) j[i] = d(rng);
  return j;
}

// b(x - y, t - s) has the Taylor coefficients of b with sign (-1)^{|k|}.
J4 reflect(const J4& b) {
  J4 r = b;
  for (std::size_t i = 0; i < J4::kSize; ++i)
    if (J4::Layout::degree(J4::Layout::indices[i]) % 2 != 0) r[i] = -r[i];
  return r;
}

TEST(HirotaProperty, Antisymmetry) {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 1000; ++k) {
    const J4 a = random_jet(rng), b = random_jet(rng);
    for (std::size_t i = 0; i < J4::kSize; ++i) {
      const auto& alpha = J4::Layout::indices[i];
      const double sign = J4::Layout::degree(alpha) % 2 == 0 ? 1.0 : -1.0;
      const double ab = hirota(a, b, alpha), ba = hirota(b, a, alpha);
      EXPECT_NEAR(ab, sign * ba, 1e-12 * (1.0 + std::abs(ab)));
    }
  }
}

// Definition as a shifted product: D^alpha a.b = d_y^alpha [a(x+y) b(x-y)] at y = 0.
TEST(HirotaProperty, MatchesShiftedProduct) {
  std::mt19937_64 rng(102);
  for (int k = 0; k < 1000; ++k) {
    const J4 a = random_jet(rng), b = random_jet(rng);
    const J4 prod = a * reflect(b);
    for (std::size_t i = 0; i < J4::kSize; ++i) {
      const auto& alpha = J4::Layout::indices[i];
      const double expected = prod.derivative(alpha);
      EXPECT_NEAR(hirota(a, b, alpha), expected, 1e-11 * (1.0 + std::abs(expected)));
    }
  }
}

TEST(Hirota, ExponentialEigenIdentity) {
  const double k1 = 0.7, k2 = -1.3, w1 = 0.4, w2 = 1.1, x = 0.25, t = -0.6;
  const J4 X = J4::variable(x, 0), T = J4::variable(t, 1);
  const J4 a = exp(k1 * X + w1 * T), b = exp(k2 * X + w2 * T);
  const double base = std::exp((k1 + k2) * x + (w1 + w2) * t);
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; m + n <= 4; ++n) {
      const double expected = std::pow(k1 - k2, m) * std::pow(w1 - w2, n) * base;
      EXPECT_NEAR(hirota(a, b, m, n), expected, 1e-13 * (1.0 + std::abs(expected))) << m << "," << n;
    }
}

TEST(Hirota, SecondOrderSelfProduct) {
  std::mt19937_64 rng(103);
  const J4 f = random_jet(rng);
  const double expected = 2.0 * (f.value() * f.derivative({2, 0}) - f.derivative({1, 0}) * f.derivative({1, 0}));
  EXPECT_NEAR(hirota(f, f, 2, 0), expected, 1e-13);
  EXPECT_EQ(hirota(f, f, 1, 0), 0.0);
  EXPECT_EQ(hirota(f, f, 2, 1), 0.0);
}

TEST(Hirota, ComplexIsBilinear) {
  std::mt19937_64 rng(104);
  const ComplexTaylor<2, 4> g{random_jet(rng), random_jet(rng)};
  const J4 f = random_jet(rng);
  const auto z = hirota(g, f, J4::Index{1, 1});
  EXPECT_EQ(z.real(), hirota(g.re, f, 1, 1));
  EXPECT_EQ(z.imag(), hirota(g.im, f, 1, 1));
}

TEST(Hirota, RejectsOrderAboveJet) {
  const J4 a = J4::constant(1.0);
  EXPECT_THROW(hirota(a, a, 3, 2), UsageError);
  EXPECT_THROW(hirota(a, a, J4::Index{5, 0}), UsageError);
  EXPECT_NO_THROW(hirota(a, a, 2, 2));
}

}  // namespace
}  // namespace dsvs
