#include "dsvs/catalog.hpp"

#include <numbers>

#include "dsvs/errors.hpp"

namespace dsvs {

namespace {

using std::numbers::pi;

CatalogEntry dromion() {
  const auto p = ProfileFunction::exp_sum({{1.0, 1.0, 1.0, 1.0}});
  return {"dromion",
          "Fig. 1(a)",
          SolutionSpec({1.0, 1.0, 1.0, 2.0}, p, p),
          Window{},
          {0.0},
          {},
          false,
          "single localized hump; reflection symmetric under y -> -y"};
}

CatalogEntry solitoff() {
  const auto p = ProfileFunction::exp_sum({{1.0, 1.0, 1.0, 1.0}, {1.0, 2.0, 1.0, 1.0}});
  const auto q = ProfileFunction::exp_sum({{1.0, 1.0, -1.0, 1.0}, {1.0, 2.0, -1.0, 1.0}});
  return {"solitoff", "Fig. 1(b)", SolutionSpec({2.0, 0.0, 2.0, 2.0}, p, q), Window{}, {0.0}, {}, false,
          "single line soliton terminating in the plane"};
}

CatalogEntry resonant() {
  const auto p = ProfileFunction::exp_sum({{-1.0, -1.0, 1.0, 1.0}, {1.0, 2.0, 1.0, 1.0}});
  const auto q = ProfileFunction::exp_sum({{-1.0, -1.0, -1.0, 1.0}, {1.0, 2.0, -1.0, 1.0}});
  return {"resonant",
          "Fig. 2",
          SolutionSpec({2.0, -1.0, 2.0, 0.0}, p, q),
          Window{},
          {0.0},
          {},
          true,
          "resonant solitoffs changing direction in time; f = 2 - p + 2q vanishes along a curve in the window"};
}

CatalogEntry breather() {
  return {"breather",
          "Fig. 3",
          SolutionSpec({2.0, 1.0, 2.0, 2.0}, ProfileFunction::breather_p(), ProfileFunction::breather_q()),
          Window{},
          {0.0, 0.7, 0.9, 3.0},
          {pi / 2},
          false,
          "period pi; p and q depend on t only through cos^2 t; U = 0 at t = pi/2 + k pi"};
}

CatalogEntry periodic() {
  const double bound = pi / 2 - 0.1;
  const double half = bound * std::numbers::sqrt2;
  return {"periodic",
          "Fig. 4",
          SolutionSpec({2.0, 1.0, 2.0, 2.0}, ProfileFunction::tan_cos(), ProfileFunction::tan_cos()),
          Window{-half, half, -half, half, bound},
          {0.0, pi / 4, pi / 3, 2 * pi / 3, 3 * pi / 4, pi},
          {pi / 2},
          false,
          "period pi; U(x, y, t + pi) = U(-x, -y, t); window restricted to |zeta|, |eta| < pi/2 - 0.1"};
}

CatalogEntry double_instanton() {
  return {"double_instanton",
          "Fig. 5",
          SolutionSpec({2.0, 1.0, 2.0, 2.0}, ProfileFunction::instanton_p(), ProfileFunction::instanton_q()),
          Window{-12.0, 12.0, -12.0, 12.0, std::nullopt},
          {0.0, 3.0, 6.0},
          {},
          false,
          "two bonded peaks either side of the zeta = -1 pole (masked |zeta + 1| < 0.05); max U ~ 0.6, 0.006, "
          "1.5e-5 at t = 0, 3, 6"};
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"dromion",  "solitoff", "resonant",
                                              "breather", "periodic", "double_instanton"};
  return names;
}

CatalogEntry build_case(std::string_view name) {
  if (name == "dromion") return dromion();
  if (name == "solitoff") return solitoff();
  if (name == "resonant") return resonant();
  if (name == "breather") return breather();
  if (name == "periodic") return periodic();
  if (name == "double_instanton") return double_instanton();
  std::string valid;
  for (const auto& n : catalog_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw UsageError("unknown case '" + std::string(name) + "' (valid: " + valid + ")");
}

}  // namespace dsvs
