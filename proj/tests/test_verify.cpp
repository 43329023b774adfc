#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dsvs/catalog.hpp"
#include "dsvs/verify.hpp"
#include "random_spec.hpp"

namespace dsvs {
namespace {

using std::numbers::pi;

const Window kInner{-4.0, 4.0, -4.0, 4.0};

SeparatedSolution dromion_aux(AuxiliaryOptions opts = {}) {
  return SeparatedSolution(build_case("dromion").spec, opts);
}

using testing::random_admissible_spec;

TEST(BilinearLine2, CatalogCasesAtReferenceTimes) {
  for (const auto& name : catalog_names()) {
    const auto entry = build_case(name);
    const SeparatedSolution aux(entry.spec);
    for (double t : entry.reference_times) {
      const auto rep = bilinear_residuals(aux, entry.window, t);
      EXPECT_GT(rep.line2.samples, 0) << name;
      EXPECT_LT(rep.line2.max_rel, 1e-12) << name << " t=" << t;
      EXPECT_EQ(rep.line2.sign_violations, 0) << name << " t=" << t;
    }
  }
}

TEST(BilinearLine2Property, RandomSpecs) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> td(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const SeparatedSolution aux(random_admissible_spec(rng));
    const auto rep = bilinear_residuals(aux, Window{}, td(rng), {.nx = 32, .ny = 32});
    EXPECT_EQ(rep.line2.samples, 32 * 32);
    EXPECT_LT(rep.line2.max_rel, 1e-12) << "spec " << i;
  }
}

TEST(BilinearLine1, DromionClosedCase) {
  const auto rep = bilinear_residuals(dromion_aux(), kInner, 0.0);
  ASSERT_TRUE(rep.line1.applicable) << rep.line1.note;
  EXPECT_LT(rep.line1.max_abs, 1e-8);
  EXPECT_LT(rep.consistency.variation(), 1e-12);
  EXPECT_GE(rep.line1.max_abs, rep.line1.mean_abs);
  EXPECT_TRUE(kInner.contains(rep.line1.worst_point.x, rep.line1.worst_point.y));
}

TEST(BilinearLine1, CorruptedBackgroundIsDetected) {
  AuxiliaryOptions opts;
  opts.p0_override = 0.5;
  const auto rep = bilinear_residuals(dromion_aux(opts), kInner, 0.0);
  ASSERT_TRUE(rep.line1.applicable);
  EXPECT_GT(rep.line1.max_abs, 1e-2);
}

TEST(BilinearLine1, InconsistentSeparationIsNotApplicable) {
  CoefficientFunctions fn;
  fn.gamma = TimeFunction(0.5);
  const SeparatedSolution aux(build_case("dromion").spec.with_funcs(fn));
  const auto rep = bilinear_residuals(aux, kInner, 0.0);
  EXPECT_FALSE(rep.line1.applicable);
  EXPECT_GT(rep.consistency.variation(), 1e-3);
  EXPECT_FALSE(rep.line1.note.empty());
  // line 2 does not depend on the separation being consistent
  EXPECT_LT(rep.line2.max_rel, 1e-12);
}

TEST(BilinearLine1, PhaseGradientOffsetIsDetectedWithGateLifted) {
  AuxiliaryOptions opts;
  opts.r_zeta_offset = 0.1;
  const auto aux = dromion_aux(opts);
  EXPECT_FALSE(bilinear_residuals(aux, kInner, 0.0).line1.applicable);
  const auto rep = bilinear_residuals(aux, kInner, 0.0, {.consistency_threshold = INFINITY});
  ASSERT_TRUE(rep.line1.applicable);
  EXPECT_GT(rep.line1.max_rel, 1e-3);
}

// Flipping a delta negates u, and every envelope term is odd in u.
TEST(BilinearLine1, DeltaSignLeavesResidualInvariant) {
  const auto base = bilinear_residuals(dromion_aux(), kInner, 0.0).line1.max_abs;
  const SeparatedSolution flipped(build_case("dromion").spec.with_signs(-1, 1));
  EXPECT_NEAR(bilinear_residuals(flipped, kInner, 0.0).line1.max_abs, base, 1e-12);
}

TEST(BilinearLine1, ResonantUsesBracketGate) {
  const auto entry = build_case("resonant");
  const auto rep = bilinear_residuals(SeparatedSolution(entry.spec), kInner, 0.0);
  EXPECT_FALSE(rep.consistency.applicable);
  EXPECT_LT(rep.consistency.bracket_p_max_abs, 1e-12);
  EXPECT_LT(rep.consistency.bracket_q_max_abs, 1e-12);
  EXPECT_LT(rep.line2.max_rel, 1e-12);
}

TEST(PdeLine1, DromionClosedCase) {
  const auto rep = pde_residuals(dromion_aux(), kInner, 0.0, {.h_envelope = 1e-3});
  ASSERT_TRUE(rep.line1.applicable) << rep.line1.note;
  EXPECT_GT(rep.line1.samples, 0);
  EXPECT_LT(rep.line1.max_abs, 1e-6);
}

TEST(PdeLine1, NegativeControls) {
  AuxiliaryOptions bad_p0;
  bad_p0.p0_override = 0.5;
  EXPECT_GT(pde_residuals(dromion_aux(bad_p0), kInner, 0.0).line1.max_abs, 1e-2);

  AuxiliaryOptions bad_r;
  bad_r.r_zeta_offset = 0.1;
  const auto rep = pde_residuals(dromion_aux(bad_r), kInner, 0.0, {.consistency_threshold = INFINITY});
  ASSERT_TRUE(rep.line1.applicable);
  EXPECT_GT(rep.line1.max_abs, 1e-3);
}

// Differences of smooth fields shrink by 2^accuracy as h halves.
TEST(PdeLine2, ConvergesAtNominalOrder) {
  for (const char* name : {"dromion", "solitoff"})
    for (int accuracy : {2, 4}) {
      const SeparatedSolution aux(build_case(name).spec);
      const auto conv =
          pde_convergence(aux, kInner, 0.0, {.nx = 16, .ny = 16, .accuracy = accuracy, .h_constraint = 0.05});
      EXPECT_NEAR(conv.order_line2, accuracy, 0.3) << name << " accuracy " << accuracy;
      EXPECT_LT(conv.fine.line2.max_abs, conv.coarse.line2.max_abs);
    }
}

TEST(PdeLine2, BreatherDegenerateTimeIsTrivial) {
  const SeparatedSolution aux(build_case("breather").spec);
  const auto rep = pde_residuals(aux, kInner, pi / 2);
  // U vanishes, so only rounding in the mixed difference of phi remains
  EXPECT_LT(rep.line2.max_abs, 1e-10);
}

TEST(Scan, DromionIsPositive) {
  const auto scan = singularity_scan(build_case("dromion").spec, Window{}, 0.0, 64, 64);
  EXPECT_GT(scan.min_abs_f, 1.0);
  EXPECT_TRUE(scan.sign_change_cells.empty());
  EXPECT_EQ(scan.singular_points, 0);
}

TEST(Scan, ResonantSignChangesMatchBruteForce) {
  const auto spec = build_case("resonant").spec;
  const Window w{};
  const int n = 40;
  const auto scan = singularity_scan(spec, w, 0.0, n, n);
  int expected = 0;
  auto f = [&](int i, int j) {
    const CoordinatePoint pt{grid_coordinate(w.x0, w.x1, i, n), grid_coordinate(w.y0, w.y1, j, n), 0.0};
    const double p = spec.p().value(pt.zeta(), 0.0), q = spec.q().value(pt.eta(), 0.0);
    return 2.0 - p + 2.0 * q;
  };
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < n; ++j) {
      const double v[] = {f(i, j), f(i + 1, j), f(i, j + 1), f(i + 1, j + 1)};
      bool pos = false, neg = false;
      for (double x : v) (x > 0 ? pos : neg) = true;
      if (pos && neg) ++expected;
    }
  EXPECT_GT(expected, 0);
  EXPECT_EQ(static_cast<int>(scan.sign_change_cells.size()), expected);
}

TEST(Scan, PeriodicPolesWithoutMask) {
  const auto spec = build_case("periodic").spec;
  const Window square{-3.0, 3.0, -3.0, 3.0};
  const auto unmasked = singularity_scan(spec, square, 0.0, 64, 64, false);
  EXPECT_GT(unmasked.pole_points, 0);
  const auto text = scan_to_text(unmasked);
  EXPECT_NE(text.find("pole_points: " + std::to_string(unmasked.pole_points)), std::string::npos);
  // the catalog diamond stays clear of tan poles
  const auto entry = build_case("periodic");
  EXPECT_EQ(singularity_scan(entry.spec, entry.window, 0.0, 64, 64).pole_points, 0);
}

TEST(Report, TextHasOneLinePerField) {
  const auto rep = bilinear_residuals(dromion_aux(), kInner, 0.0, {.nx = 8, .ny = 8});
  const auto text = rep.line2.to_text();
  EXPECT_NE(text.find("check: bilinear2\n"), std::string::npos);
  EXPECT_NE(text.find("max_abs: "), std::string::npos);
  EXPECT_NE(text.find("samples: 64"), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

TEST(Report, DeterministicAcrossRuns) {
  const auto a = bilinear_residuals(dromion_aux(), kInner, 0.0).line1.to_text();
  const auto b = bilinear_residuals(dromion_aux(), kInner, 0.0).line1.to_text();
  EXPECT_EQ(a, b);
}

TEST(WindowConsistency, DromionAndGain) {
  EXPECT_LT(window_consistency(dromion_aux(), kInner, 0.0).variation(), 1e-12);
  CoefficientFunctions fn;
  fn.gamma = TimeFunction(0.5);
  const SeparatedSolution gain(build_case("dromion").spec.with_funcs(fn));
  EXPECT_GT(window_consistency(gain, kInner, 0.0).variation(), 1e-3);
}

}  // namespace
}  // namespace dsvs
