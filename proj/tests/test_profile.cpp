#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dsvs/errors.hpp"
#include "dsvs/profile.hpp"
#include "dsvs/solution.hpp"

namespace dsvs {
namespace {

using std::numbers::pi;

TEST(Profile, ExpSumMatchesClosedForm) {
  const auto p = ProfileFunction::exp_sum({{1.0, 1.0, 1.0, 1.0}, {-0.5, 2.0, -1.0, 0.0}});
  const double s = 0.3, t = -0.2;
  const auto j = p.jet<3>(s, t);
  const double e1 = std::exp(s + t + 1.0), e2 = -0.5 * std::exp(2.0 * s - t);
  EXPECT_NEAR(j.value(), e1 + e2, 1e-15);
  EXPECT_NEAR(j.derivative({1, 0}), e1 + 2.0 * e2, 1e-15);
  EXPECT_NEAR(j.derivative({3, 0}), e1 + 8.0 * e2, 1e-14);
  EXPECT_NEAR(j.derivative({0, 1}), e1 - e2, 1e-15);
  EXPECT_NEAR(j.derivative({2, 1}), e1 - 4.0 * e2, 1e-14);
}

TEST(Profile, ExpSumRejectsBadParameters) {
  EXPECT_THROW(ProfileFunction::exp_sum({}), UsageError);
  EXPECT_THROW(ProfileFunction::exp_sum({{NAN, 1.0, 0.0, 0.0}}), UsageError);
  EXPECT_THROW(ProfileFunction::exp_sum({{1.0, INFINITY, 0.0, 0.0}}), UsageError);
}

TEST(Profile, FixedFamiliesAgainstDirectFormulas) {
  const double s = 0.4, t = 0.7;
  const double c = std::cos(t);
  EXPECT_NEAR(ProfileFunction::breather_p().value(s, t), 1.0 + std::exp(s * c * c), 1e-15);
  EXPECT_NEAR(ProfileFunction::breather_q().value(s, t), std::exp(s + c * c), 1e-15);
  EXPECT_NEAR(ProfileFunction::tan_cos().value(s, t), 1.0 + std::exp(std::tan(s) * c + 1.0), 1e-14);
  EXPECT_NEAR(ProfileFunction::instanton_p().value(s, t),
              std::exp(s + 2 * t + 1) + std::exp(s + t + 1) + std::exp(-1.0 / (s * s * s + 1.0) + 2 * t + 1), 1e-13);
  EXPECT_NEAR(ProfileFunction::instanton_q().value(s, t), std::exp(s + 2 * t + 1) + std::exp(s + t + 1), 1e-13);
}

TEST(Profile, BreatherSlopeVanishesAtQuarterPeriod) {
  const auto j = ProfileFunction::breather_p().jet<3>(1.3, pi / 2);
  EXPECT_NEAR(j.derivative({1, 0}), 0.0, 1e-15);
  EXPECT_NEAR(j.derivative({3, 0}), 0.0, 1e-15);
}

// Third spatial derivatives feed the amplitude curvature; check them against
// a fourth-order central difference of the second derivative.
TEST(ProfileProperty, ThirdDerivativeMatchesDifferences) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> s_dist(-0.9, 0.9), t_dist(-1.0, 1.0);
  const std::vector<ProfileFunction> families{ProfileFunction::breather_p(), ProfileFunction::breather_q(),
                                              ProfileFunction::tan_cos(), ProfileFunction::instanton_p(),
                                              ProfileFunction::instanton_q()};
  const double h = 1e-3;
  for (const auto& p : families)
    for (int k = 0; k < 20; ++k) {
      const double s = s_dist(rng) * 0.5 + (p.family() == ProfileFamily::instanton_p ? 0.3 : 0.0), t = t_dist(rng);
      auto d2 = [&](double x) { return p.jet<2>(x, t).d11(); };
      const double fd = (d2(s - 2 * h) - 8 * d2(s - h) + 8 * d2(s + h) - d2(s + 2 * h)) / (12 * h);
      const double exact = p.jet<3>(s, t).derivative({3, 0});
      EXPECT_NEAR(fd, exact, 1e-6 * (1.0 + std::abs(exact))) << p.label() << " s=" << s << " t=" << t;
    }
}

TEST(Profile, PolesAndMargins) {
  const auto tc = ProfileFunction::tan_cos();
  EXPECT_NEAR(tc.pole_distance(1.5), pi / 2 - 1.5, 1e-15);
  EXPECT_NEAR(tc.pole_distance(-2.0), 2.0 - pi / 2, 1e-15);
  EXPECT_EQ(tc.poles_between(-2.0, 2.0).size(), 2u);

  const auto ip = ProfileFunction::instanton_p();
  EXPECT_NEAR(ip.pole_distance(-0.98), 0.02, 1e-15);
  EXPECT_TRUE(ip.near_pole(-1.04));
  EXPECT_FALSE(ip.near_pole(-1.06));
  ASSERT_EQ(ip.poles_between(0.0, -3.0).size(), 1u);
  EXPECT_EQ(ip.poles_between(0.0, -3.0)[0], -1.0);

  EXPECT_TRUE(std::isinf(ProfileFunction::instanton_q().pole_distance(-1.0)));
  EXPECT_TRUE(ProfileFunction::instanton_q().poles_between(-5.0, 5.0).empty());
}

TEST(Profile, CustomEvaluator) {
  const auto p = ProfileFunction::custom([](const ProfileJet& s, const ProfileJet& t) { return s * s * t; }, "s^2 t",
                                         {2.0}, 0.25);
  const auto j = p.jet<2>(3.0, 2.0);
  EXPECT_DOUBLE_EQ(j.value(), 18.0);
  EXPECT_DOUBLE_EQ(j.d1(), 12.0);
  EXPECT_DOUBLE_EQ(j.d11(), 4.0);
  EXPECT_DOUBLE_EQ(j.d1t(), 6.0);
  EXPECT_EQ(p.describe("zeta"), "s^2 t");
  EXPECT_TRUE(p.near_pole(2.2));
  EXPECT_THROW(ProfileFunction::custom({}), UsageError);
}

TEST(Profile, FamilyNames) {
  for (auto f : {ProfileFamily::exp_sum, ProfileFamily::breather_p, ProfileFamily::breather_q, ProfileFamily::tan_cos,
                 ProfileFamily::instanton_p, ProfileFamily::instanton_q})
    EXPECT_EQ(parse_family(family_name(f)), f);
  // custom profiles carry code, not parameters, so they have no text form
  EXPECT_THROW(parse_family("custom"), UsageError);
  EXPECT_THROW(parse_family("gaussian"), UsageError);
}

TEST(Solution, DeterminantCached) {
  const SeparationCoefficients c(1.0, 1.0, 1.0, 2.0);
  EXPECT_EQ(c.det(), 1.0);
  EXPECT_EQ(SeparationCoefficients(2, 0, 2, 2).det(), 4.0);
  EXPECT_THROW(SeparationCoefficients(1, NAN, 0, 0), UsageError);
}

TEST(Solution, SignsMustBeUnit) {
  const auto p = ProfileFunction::instanton_q();
  EXPECT_THROW(SolutionSpec(SeparationCoefficients(1, 1, 1, 2), p, p, {}, 2, 1), UsageError);
  EXPECT_THROW(SolutionSpec(SeparationCoefficients(1, 1, 1, 2), p, p, {}, 1, 0), UsageError);
  const SolutionSpec ok(SeparationCoefficients(1, 1, 1, 2), p, p, {}, -1, 1);
  EXPECT_EQ(ok.with_signs(1, -1).delta2(), -1);
}

TEST(CoordinateProperty, RotationIsAnIsometryAndRoundTrips) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const CoordinatePoint pt{d(rng), d(rng), 0.0};
    const double z = pt.zeta(), e = pt.eta();
    EXPECT_NEAR(z * z + e * e, pt.x * pt.x + pt.y * pt.y, 1e-12);
    const auto back = CoordinatePoint::from_rotated(z, e, 0.0);
    EXPECT_NEAR(back.x, pt.x, 1e-14);
    EXPECT_NEAR(back.y, pt.y, 1e-14);
  }
}

TEST(Window, ParseFormatAndContainment) {
  const Window w = Window::parse("-4:4:-2:6");
  EXPECT_EQ(w.x0, -4.0);
  EXPECT_EQ(w.y1, 6.0);
  EXPECT_EQ(Window::parse(w.to_string()), w);
  EXPECT_TRUE(w.contains(0.0, 0.0));
  EXPECT_FALSE(w.contains(0.0, -3.0));
  EXPECT_THROW(Window::parse("1:0:0:1"), UsageError);
  EXPECT_THROW(Window::parse("0:1:0"), UsageError);
  EXPECT_THROW(Window::parse("a:1:0:1"), UsageError);

  Window diamond{-2, 2, -2, 2, 1.0};
  EXPECT_TRUE(diamond.contains(0.5, 0.0));
  EXPECT_FALSE(diamond.contains(1.5, 0.0));  // zeta = 1.06 > 1
}

TEST(Window, GridIsMirrorSymmetric) {
  for (int n : {8, 9, 64, 65})
    for (int i = 0; i < n; ++i) EXPECT_EQ(grid_coordinate(-3.0, 3.0, i, n), -grid_coordinate(-3.0, 3.0, n - 1 - i, n));
  EXPECT_EQ(grid_coordinate(-3.0, 5.0, 0, 5), -3.0);
  EXPECT_EQ(grid_coordinate(-3.0, 5.0, 4, 5), 5.0);
}

}  // namespace
}  // namespace dsvs
