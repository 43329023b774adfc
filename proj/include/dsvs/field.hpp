#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsvs/auxiliary.hpp"

namespace dsvs {

enum class FieldQuantity { U, phi, constraint_residual };
std::string_view quantity_name(FieldQuantity q);
/// "U", "phi" or "residual"; throws UsageError otherwise.
FieldQuantity parse_quantity(std::string_view text);

/// A sampled field on the (x, y) grid of a window. Storage is row-major
/// with y varying slowest: index iy * nx + ix.
struct FieldGrid {
  Window window;
  int nx = 0;
  int ny = 0;
  double t = 0.0;
  FieldQuantity quantity = FieldQuantity::U;
  std::vector<double> values;
  std::vector<std::uint8_t> mask;  // 1 = valid

  std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx + ix; }
  double x(int ix) const { return grid_coordinate(window.x0, window.x1, ix, nx); }
  double y(int iy) const { return grid_coordinate(window.y0, window.y1, iy, ny); }
  double at(int ix, int iy) const { return values[index(ix, iy)]; }
  bool valid(int ix, int iy) const { return mask[index(ix, iy)] != 0; }
  int valid_count() const;
};

/// Samples U, phi (with the separation's backgrounds) or the pointwise
/// constraint residual |2 D_zeta D_eta f.f - g g*|. Points outside the window,
/// near profile poles or at the division guard are masked. Needs nx, ny >= 8;
/// throws SingularInputError when nothing is valid.
FieldGrid sample_field(const SeparatedSolution& aux, FieldQuantity which, const Window& window, double t, int nx,
                       int ny);
FieldGrid sample_field(const SolutionSpec& spec, FieldQuantity which, const Window& window, double t, int nx,
                       int ny);

struct GridPeak {
  int ix = 0;
  int iy = 0;
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

struct Extrema {
  GridPeak global_max;
  /// Valid points above all valid 8-neighbours. A flat top counts once,
  /// at its first point in storage order.
  std::vector<GridPeak> local_maxima;
};

/// Throws UsageError for a grid with no valid point.
Extrema analyze_extrema(const FieldGrid& grid);

/// Compass search on U from the grid peak down to steps of `tolerance`.
GridPeak refine_max(const SolutionSpec& spec, const FieldGrid& grid, const GridPeak& start,
                    double tolerance = 1e-10);

enum class PeriodStatistic { global_max, l2 };
std::string_view statistic_name(PeriodStatistic s);
PeriodStatistic parse_statistic(std::string_view text);

struct PeriodOptions {
  int nx = 64;
  int ny = 64;
  PeriodStatistic statistic = PeriodStatistic::global_max;
  /// Relative tie tolerance on the statistic.
  double tie_tolerance = 1e-9;
};

struct PeriodEstimate {
  std::optional<double> period;
  double best_candidate = 0.0;  // smallest-mismatch lag when no period is found
  double mismatch = 0.0;  // relative, at the reported lag
  double resolution = 0.0;  // sampling step in t
  bool constant = false;  // the statistic does not vary: no period defined
  std::vector<std::pair<double, double>> series;
};

/// Smallest T in (0, (t1 - t0)/2] with stat(t + T) = stat(t) over n_t
/// samples t0 + i (t1 - t0)/n_t; an inexact best lag is refined by golden
/// section on the continuous shift. Needs n_t >= 16.
PeriodEstimate estimate_period(const SolutionSpec& spec, const Window& window, double t0, double t1, int n_t,
                               const PeriodOptions& options = {});

struct DecayPoint {
  double t = 0.0;
  double max = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// Refined max U at each time.
std::vector<DecayPoint> decay_profile(const SolutionSpec& spec, const Window& window, const std::vector<double>& times,
                                      int nx = 256, int ny = 256);

/// max |a(ix, iy) - b(ix, ny - 1 - iy)|: the defect of U(x, y) = U(x, -y)
/// when b is a itself on a y-symmetric window.
double reflection_defect_y(const FieldGrid& a, const FieldGrid& b);
/// max |a(ix, iy) - b(nx - 1 - ix, ny - 1 - iy)|.
double point_reflection_defect(const FieldGrid& a, const FieldGrid& b);
/// max |a - b| over points valid in both.
double pointwise_defect(const FieldGrid& a, const FieldGrid& b);

struct AnalyticsResult {
  std::optional<GridPeak> global_max;
  std::vector<GridPeak> local_maxima;
  std::optional<PeriodEstimate> period;
  std::vector<DecayPoint> decay_series;
  std::map<std::string, double> symmetry_defects;

  /// One "key: value" line per entry.
  std::string to_text() const;
};

}  // namespace dsvs
