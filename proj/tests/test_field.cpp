#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dsvs/catalog.hpp"
#include "dsvs/errors.hpp"
#include "dsvs/field.hpp"

namespace dsvs {
namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

FieldGrid sample_U(const CatalogEntry& e, double t, int n = 64) {
  return sample_field(e.spec, FieldQuantity::U, e.window, t, n, n);
}

// With p = q = e^{s + t + 1} the dromion is U = 4ab / (1 + a + b + 2ab)^2 in
// a = e^{zeta + 1}, b = e^{eta + 1}; the maximum sits at a = b = 1/sqrt2.
TEST(Extrema, DromionPeakMatchesClosedForm) {
  const auto entry = build_case("dromion");
  const auto grid = sample_U(entry, 0.0, 129);
  const auto ex = analyze_extrema(grid);
  ASSERT_EQ(ex.local_maxima.size(), 1u);
  const auto peak = refine_max(entry.spec, grid, ex.global_max);
  const double s = std::log(1.0 / sqrt2) - 1.0;
  EXPECT_NEAR(peak.value, 2.0 / ((2.0 + sqrt2) * (2.0 + sqrt2)), 1e-14);
  EXPECT_NEAR(peak.x, sqrt2 * s, 1e-6);
  EXPECT_NEAR(peak.y, 0.0, 1e-6);
}

TEST(Extrema, DromionReflectionSymmetry) {
  const auto grid = sample_U(build_case("dromion"), 0.0);
  EXPECT_LT(reflection_defect_y(grid, grid), 1e-12);
}

TEST(Extrema, FlatTopCountsOnce) {
  FieldGrid g;
  g.nx = g.ny = 8;
  g.window = Window{0, 7, 0, 7};
  g.values.assign(64, 0.0);
  g.mask.assign(64, 1);
  g.values[g.index(3, 3)] = g.values[g.index(4, 3)] = 1.0;
  g.values[g.index(6, 6)] = 0.5;
  const auto ex = analyze_extrema(g);
  ASSERT_EQ(ex.local_maxima.size(), 2u);
  EXPECT_EQ(ex.global_max.ix, 3);
  g.mask.assign(64, 0);
  EXPECT_THROW(analyze_extrema(g), UsageError);
}

TEST(Period, BreatherIsPi) {
  const auto entry = build_case("breather");
  const auto est = estimate_period(entry.spec, entry.window, 0.0, 2.0 * pi, 128, {.nx = 32, .ny = 32});
  ASSERT_TRUE(est.period.has_value());
  EXPECT_NEAR(*est.period, pi, 2.0 * pi / 128);
  EXPECT_EQ(est.series.size(), 128u);
}

// p and q depend on t only through cos^2 t.
TEST(Period, BreatherPointwise) {
  const auto entry = build_case("breather");
  for (double t : {0.0, 0.7, 0.9, 3.0})
    EXPECT_LT(pointwise_defect(sample_U(entry, t + pi), sample_U(entry, t)), 1e-12) << t;
}

// tan is odd and cos(t + pi) = -cos t, so p(zeta, t + pi) = p(-zeta, t).
TEST(Period, PeriodicPointReflection) {
  const auto entry = build_case("periodic");
  for (double t : entry.reference_times) {
    const auto a = sample_U(entry, t + pi), b = sample_U(entry, t);
    EXPECT_LT(point_reflection_defect(a, b), 1e-12) << t;
  }
  const auto est = estimate_period(entry.spec, entry.window, 0.0, 2.0 * pi, 128, {.nx = 32, .ny = 32});
  ASSERT_TRUE(est.period.has_value());
  EXPECT_NEAR(*est.period, pi, est.resolution);
}

TEST(Period, ConstantSeriesHasNoPeriod) {
  const SolutionSpec frozen({1, 1, 1, 2}, ProfileFunction::exp_sum({{1.0, 1.0, 0.0, 0.0}}),
                            ProfileFunction::exp_sum({{1.0, 1.0, 0.0, 0.0}}));
  const auto est = estimate_period(frozen, Window{}, 0.0, 1.0, 16, {.nx = 16, .ny = 16});
  EXPECT_TRUE(est.constant);
  EXPECT_FALSE(est.period.has_value());
  EXPECT_THROW(estimate_period(frozen, Window{}, 0.0, 1.0, 8), UsageError);
}

// Reference peak heights of the instanton case at t = 0, 3, 6.
TEST(Decay, InstantonRanges) {
  const auto entry = build_case("double_instanton");
  const auto series = decay_profile(entry.spec, entry.window, {0.0, 3.0, 6.0}, 128, 128);
  ASSERT_EQ(series.size(), 3u);
  const double expected[] = {0.6, 0.006, 1.5e-5};
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(series[i].max, expected[i], 0.25 * expected[i]) << series[i].t;
  EXPECT_EQ(analyze_extrema(sample_U(entry, 0.0, 128)).local_maxima.size(), 2u);
}

TEST(Sample, MasksAndErrors) {
  const auto entry = build_case("periodic");
  const auto grid = sample_U(entry, 0.0, 32);
  EXPECT_GT(grid.valid_count(), 0);
  EXPECT_LT(grid.valid_count(), 32 * 32);  // corners fall outside the diamond
  EXPECT_EQ(grid.values.size(), 32u * 32u);
  EXPECT_THROW(sample_field(entry.spec, FieldQuantity::U, entry.window, 0.0, 4, 32), UsageError);
  // the breather's U vanishes identically at t = pi/2
  const auto flat = sample_U(build_case("breather"), pi / 2, 16);
  for (double v : flat.values) EXPECT_LT(v, 1e-30);
}

TEST(Sample, PhiAndResidual) {
  const auto entry = build_case("dromion");
  const SeparatedSolution aux(entry.spec);
  const auto phi = sample_field(aux, FieldQuantity::phi, Window{-2, 2, -2, 2}, 0.0, 16, 16);
  EXPECT_EQ(phi.quantity, FieldQuantity::phi);
  EXPECT_EQ(phi.valid_count(), 256);
  const auto res = sample_field(aux, FieldQuantity::constraint_residual, Window{-2, 2, -2, 2}, 0.0, 16, 16);
  // absolute residual, bounded against the magnitude of the cancelling terms
  for (int iy = 0; iy < 16; ++iy)
    for (int ix = 0; ix < 16; ++ix) {
      const auto f = eval_f(entry.spec, CoordinatePoint{res.x(ix), res.y(iy), 0.0});
      const double scale = 4.0 * (std::abs(f.value() * f.derivative(axes::zeta_eta)) +
                                  std::abs(f.derivative(axes::zeta) * f.derivative(axes::eta)));
      EXPECT_LT(res.at(ix, iy), 1e-14 * scale);
    }
}

TEST(Quantity, Names) {
  for (auto q : {FieldQuantity::U, FieldQuantity::phi, FieldQuantity::constraint_residual})
    EXPECT_EQ(parse_quantity(quantity_name(q)), q);
  EXPECT_THROW(parse_quantity("psi"), UsageError);
  EXPECT_EQ(parse_statistic(statistic_name(PeriodStatistic::l2)), PeriodStatistic::l2);
}

TEST(Analytics, TextLines) {
  AnalyticsResult r;
  r.symmetry_defects["reflection_y"] = 0.0;
  r.decay_series.push_back({3.0, 0.006, 1.0, 2.0});
  const auto text = r.to_text();
  EXPECT_NE(text.find("reflection_y: "), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

}  // namespace
}  // namespace dsvs
