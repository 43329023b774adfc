#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dsvs/ansatz.hpp"
#include "dsvs/catalog.hpp"
#include "dsvs/errors.hpp"

namespace dsvs {
namespace {

using std::numbers::pi;

TEST(Catalog, NamesAreExact) {
  const std::vector<std::string> expected{"dromion",  "solitoff", "resonant",
                                          "breather", "periodic", "double_instanton"};
  EXPECT_EQ(catalog_names(), expected);
  for (const auto& n : expected) EXPECT_EQ(build_case(n).name, n);
}

TEST(Catalog, UnknownNameListsValidOnes) {
  try {
    build_case("kink");
    FAIL();
  } catch (const UsageError& e) {
    const std::string msg = e.what();
    for (const auto& n : catalog_names()) EXPECT_NE(msg.find(n), std::string::npos);
  }
}

TEST(Catalog, Determinants) {
  EXPECT_EQ(build_case("dromion").spec.coeffs().det(), 1.0);
  EXPECT_EQ(build_case("solitoff").spec.coeffs().det(), 4.0);
  EXPECT_EQ(build_case("resonant").spec.coeffs().det(), 2.0);
  EXPECT_EQ(build_case("breather").spec.coeffs().det(), 2.0);
}

TEST(Catalog, Coefficients) {
  auto coeffs = [](const char* n) {
    const auto& c = build_case(n).spec.coeffs();
    return std::vector<double>{c.a0(), c.a1(), c.a2(), c.a3()};
  };
  EXPECT_EQ(coeffs("dromion"), (std::vector<double>{1, 1, 1, 2}));
  EXPECT_EQ(coeffs("solitoff"), (std::vector<double>{2, 0, 2, 2}));
  EXPECT_EQ(coeffs("resonant"), (std::vector<double>{2, -1, 2, 0}));
  for (const char* n : {"breather", "periodic", "double_instanton"})
    EXPECT_EQ(coeffs(n), (std::vector<double>{2, 1, 2, 2}));
}

// Profiles against the inline formulas, evaluated independently.
TEST(Catalog, ProfilesMatchFormulas) {
  const double z = 0.37, t = -0.21;
  auto p = [&](const char* n) { return build_case(n).spec.p().value(z, t); };
  auto q = [&](const char* n) { return build_case(n).spec.q().value(z, t); };
  EXPECT_NEAR(p("dromion"), std::exp(z + t + 1), 1e-14);
  EXPECT_NEAR(q("dromion"), std::exp(z + t + 1), 1e-14);
  EXPECT_NEAR(p("solitoff"), std::exp(z + t + 1) + std::exp(2 * z + t + 1), 1e-13);
  EXPECT_NEAR(q("solitoff"), std::exp(z - t + 1) + std::exp(2 * z - t + 1), 1e-13);
  EXPECT_NEAR(p("resonant"), -std::exp(-z + t + 1) + std::exp(2 * z + t + 1), 1e-13);
  EXPECT_NEAR(q("resonant"), -std::exp(-z - t + 1) + std::exp(2 * z - t + 1), 1e-13);
  const double c = std::cos(t);
  EXPECT_NEAR(p("breather"), 1 + std::exp(z * c * c), 1e-14);
  EXPECT_NEAR(q("breather"), std::exp(z + c * c), 1e-14);
  EXPECT_NEAR(p("periodic"), 1 + std::exp(std::tan(z) * c + 1), 1e-13);
  EXPECT_NEAR(q("periodic"), 1 + std::exp(std::tan(z) * c + 1), 1e-13);
  EXPECT_NEAR(p("double_instanton"),
              std::exp(z + 2 * t + 1) + std::exp(z + t + 1) + std::exp(-1 / (z * z * z + 1) + 2 * t + 1), 1e-13);
  EXPECT_NEAR(q("double_instanton"), std::exp(z + 2 * t + 1) + std::exp(z + t + 1), 1e-13);
}

TEST(Catalog, ReferenceTimesAndFigures) {
  EXPECT_EQ(build_case("breather").reference_times, (std::vector<double>{0.0, 0.7, 0.9, 3.0}));
  EXPECT_EQ(build_case("double_instanton").reference_times, (std::vector<double>{0.0, 3.0, 6.0}));
  const auto periodic = build_case("periodic").reference_times;
  ASSERT_EQ(periodic.size(), 6u);
  EXPECT_DOUBLE_EQ(periodic[1], pi / 4);
  EXPECT_DOUBLE_EQ(periodic[5], pi);
  EXPECT_EQ(build_case("dromion").figure, "Fig. 1(a)");
  EXPECT_EQ(build_case("solitoff").figure, "Fig. 1(b)");
  EXPECT_EQ(build_case("double_instanton").figure, "Fig. 5");
}

TEST(Catalog, PeriodicWindowAvoidsTanPoles) {
  const auto w = build_case("periodic").window;
  ASSERT_TRUE(w.rotated_bound.has_value());
  EXPECT_NEAR(*w.rotated_bound, pi / 2 - 0.1, 1e-15);
}

// Every entry is admissible at its reference times except those flagged as
// singular or listed as degenerate.
TEST(Catalog, AdmissibleAtReferenceTimes) {
  for (const auto& name : catalog_names()) {
    const auto entry = build_case(name);
    for (double t : entry.reference_times) {
      const auto rep = check_admissibility(entry.spec, entry.window, t, 64, 64);
      if (entry.known_singular)
        EXPECT_EQ(rep.verdict, AdmissibilityVerdict::singular) << name;
      else
        EXPECT_EQ(rep.verdict, AdmissibilityVerdict::admissible) << name << " t=" << t << ": " << rep.diagnostic;
      EXPECT_EQ(rep.scan.sign_violations, 0) << name << " t=" << t;
    }
    for (double t : entry.degenerate_times)
      EXPECT_EQ(check_admissibility(entry.spec, entry.window, t, 32, 32).verdict, AdmissibilityVerdict::degenerate)
          << name;
  }
}

TEST(Catalog, RebuildIsBitIdentical) {
  for (const auto& name : catalog_names()) {
    const auto a = build_case(name), b = build_case(name);
    EXPECT_EQ(a.spec.coeffs(), b.spec.coeffs());
    EXPECT_EQ(a.spec.funcs(), b.spec.funcs());
    EXPECT_EQ(a.spec.p().terms(), b.spec.p().terms());
    EXPECT_EQ(a.spec.q().terms(), b.spec.q().terms());
    EXPECT_EQ(a.window, b.window);
    EXPECT_EQ(a.reference_times, b.reference_times);
    const CoordinatePoint pt{0.3, -0.7, 0.2};
    EXPECT_EQ(eval_U(a.spec, pt).value, eval_U(b.spec, pt).value);
  }
}

}  // namespace
}  // namespace dsvs
