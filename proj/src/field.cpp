#include "dsvs/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "dsvs/errors.hpp"
#include "dsvs/hirota.hpp"

namespace dsvs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Node {
  int ix, iy;
  CoordinatePoint pt;
};

void require_same_shape(const FieldGrid& a, const FieldGrid& b) {
  if (a.nx != b.nx || a.ny != b.ny) throw UsageError("grids differ in shape");
}

double statistic(const FieldGrid& g, PeriodStatistic s) {
  double best = -std::numeric_limits<double>::infinity(), sq = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    if (!g.mask[i]) continue;
    best = std::max(best, g.values[i]);
    sq += g.values[i] * g.values[i];
    ++n;
  }
  return s == PeriodStatistic::global_max ? best : std::sqrt(sq / n);
}

}  // namespace

std::string_view quantity_name(FieldQuantity q) {
  switch (q) {
    case FieldQuantity::U: return "U";
    case FieldQuantity::phi: return "phi";
    case FieldQuantity::constraint_residual: return "residual";
  }
  return "U";
}

FieldQuantity parse_quantity(std::string_view text) {
  if (text == "U") return FieldQuantity::U;
  if (text == "phi") return FieldQuantity::phi;
  if (text == "residual") return FieldQuantity::constraint_residual;
  throw UsageError("unknown field quantity '" + std::string(text) + "' (expected U, phi or residual)");
}

int FieldGrid::valid_count() const { return static_cast<int>(std::count(mask.begin(), mask.end(), 1)); }

FieldGrid sample_field(const SeparatedSolution& aux, FieldQuantity which, const Window& window, double t, int nx,
                       int ny) {
  if (nx < 8 || ny < 8) throw UsageError("field grids need at least 8 samples per axis");
  const auto& spec = aux.spec();
  FieldGrid g;
  g.window = window;
  g.nx = nx;
  g.ny = ny;
  g.t = t;
  g.quantity = which;
  g.values.assign(static_cast<std::size_t>(nx) * ny, kNaN);
  g.mask.assign(g.values.size(), 0);

  std::vector<Node> nodes;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const CoordinatePoint pt{g.x(ix), g.y(iy), t};
      if (!window.contains(pt.x, pt.y)) continue;
      if (spec.p().near_pole(pt.zeta()) || spec.q().near_pole(pt.eta())) continue;
      nodes.push_back({ix, iy, pt});
    }

  auto store = [&](const Node& n, double v) {
    if (!std::isfinite(v)) return;
    g.values[g.index(n.ix, n.iy)] = v;
    g.mask[g.index(n.ix, n.iy)] = 1;
  };

  switch (which) {
    case FieldQuantity::U:
      for (const auto& n : nodes) {
        const auto s = eval_U(spec, n.pt);
        if (!s.singular) store(n, s.value);
      }
      break;
    case FieldQuantity::phi: {
      std::vector<double> zs, es;
      for (const auto& n : nodes) zs.push_back(n.pt.zeta()), es.push_back(n.pt.eta());
      const PhaseTable rt(aux, Side::zeta, zs, t), st(aux, Side::eta, es, t);
      for (const auto& n : nodes) {
        const double z = n.pt.zeta(), e = n.pt.eta();
        const Background bg = aux.background(z, e, t, aux.phase_jet(Side::zeta, z, t, rt.at(z)),
                                             aux.phase_jet(Side::eta, e, t, st.at(e)));
        if (bg.singular) continue;
        const auto s = eval_phi(spec, n.pt, bg.p0, bg.q0);
        if (!s.singular) store(n, s.value);
      }
      break;
    }
    case FieldQuantity::constraint_residual:
      for (const auto& n : nodes) {
        const SpaceTimeJet f = eval_f(spec, n.pt);
        const Jet P1 = aux.p1(n.pt.zeta(), t), Q1 = aux.q1(n.pt.eta(), t);
        if (!f.is_finite() || std::abs(f.value()) < kDivisionGuard) continue;
        const double g2 = P1.value() * P1.value() * Q1.value() * Q1.value();
        store(n, std::abs(2.0 * hirota(f, f, axes::zeta_eta) - g2));
      }
      break;
  }
  if (g.valid_count() == 0) throw SingularInputError("window entirely singular");
  return g;
}

FieldGrid sample_field(const SolutionSpec& spec, FieldQuantity which, const Window& window, double t, int nx,
                       int ny) {
  return sample_field(SeparatedSolution(spec), which, window, t, nx, ny);
}

Extrema analyze_extrema(const FieldGrid& grid) {
  if (grid.valid_count() == 0) throw UsageError("extrema need at least one valid grid point");
  Extrema out;
  auto peak = [&](int ix, int iy) { return GridPeak{ix, iy, grid.x(ix), grid.y(iy), grid.at(ix, iy)}; };

  bool have = false;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      if (grid.valid(ix, iy) && (!have || grid.at(ix, iy) > out.global_max.value)) {
        out.global_max = peak(ix, iy);
        have = true;
      }

  // Flood each equal-valued plateau once; it is a maximum when every valid
  // point bordering it is strictly lower and at least one such point exists.
  std::vector<std::uint8_t> seen(grid.values.size(), 0);
  std::vector<std::pair<int, int>> stack;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      if (!grid.valid(ix, iy) || seen[grid.index(ix, iy)]) continue;
      const double v = grid.at(ix, iy);
      bool is_max = true, bordered = false;
      stack.assign(1, {ix, iy});
      seen[grid.index(ix, iy)] = 1;
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= grid.nx || ny >= grid.ny) continue;
            if (!grid.valid(nx, ny)) continue;
            const double w = grid.at(nx, ny);
            if (w == v) {
              if (!seen[grid.index(nx, ny)]) {
                seen[grid.index(nx, ny)] = 1;
                stack.push_back({nx, ny});
              }
            } else {
              bordered = true;
              if (w > v) is_max = false;
            }
          }
      }
      if (is_max && bordered) out.local_maxima.push_back(peak(ix, iy));
    }
  return out;
}

GridPeak refine_max(const SolutionSpec& spec, const FieldGrid& grid, const GridPeak& start, double tolerance) {
  auto value_at = [&](double x, double y) {
    if (!grid.window.contains(x, y)) return -std::numeric_limits<double>::infinity();
    const CoordinatePoint pt{x, y, grid.t};
    if (spec.p().near_pole(pt.zeta()) || spec.q().near_pole(pt.eta())) return -std::numeric_limits<double>::infinity();
    const auto s = eval_U(spec, pt);
    return s.singular || !std::isfinite(s.value) ? -std::numeric_limits<double>::infinity() : s.value;
  };
  GridPeak best = start;
  best.value = value_at(start.x, start.y);
  double step = std::max((grid.window.x1 - grid.window.x0) / (grid.nx - 1), (grid.window.y1 - grid.window.y0) / (grid.ny - 1));
  constexpr int dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  while (step > tolerance) {
    bool moved = false;
    for (const auto& d : dirs) {
      const double x = best.x + d[0] * step, y = best.y + d[1] * step;
      const double v = value_at(x, y);
      if (v > best.value) {
        best.x = x, best.y = y, best.value = v;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

std::string_view statistic_name(PeriodStatistic s) { return s == PeriodStatistic::global_max ? "global_max" : "L2"; }

PeriodStatistic parse_statistic(std::string_view text) {
  if (text == "global_max" || text == "max") return PeriodStatistic::global_max;
  if (text == "L2" || text == "l2") return PeriodStatistic::l2;
  throw UsageError("unknown statistic '" + std::string(text) + "' (expected global_max or L2)");
}

PeriodEstimate estimate_period(const SolutionSpec& spec, const Window& window, double t0, double t1, int n_t,
                               const PeriodOptions& options) {
  if (n_t < 16) throw UsageError("period search needs at least 16 time samples");
  if (!(t1 > t0)) throw UsageError("period search needs t1 > t0");
  const SeparatedSolution aux(spec);
  auto stat_at = [&](double t) {
    try {
      return statistic(sample_field(aux, FieldQuantity::U, window, t, options.nx, options.ny), options.statistic);
    } catch (const SingularInputError&) {
      return kNaN;
    }
  };

  PeriodEstimate out;
  const double dt = (t1 - t0) / n_t;
  out.resolution = dt;
  std::vector<double> s(static_cast<std::size_t>(n_t));
  for (int i = 0; i < n_t; ++i) {
    const double t = t0 + i * dt;
    s[static_cast<std::size_t>(i)] = stat_at(t);
    out.series.emplace_back(t, s[static_cast<std::size_t>(i)]);
  }
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, scale = 0.0;
  for (double v : s) {
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v), hi = std::max(hi, v);
    scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0 || hi - lo <= options.tie_tolerance * scale) {
    out.constant = true;
    return out;
  }

  auto lag_mismatch = [&](int m) {
    double worst = 0.0;
    for (int i = 0; i + m < n_t; ++i) {
      const double a = s[static_cast<std::size_t>(i)], b = s[static_cast<std::size_t>(i + m)];
      if (std::isfinite(a) && std::isfinite(b)) worst = std::max(worst, std::abs(b - a));
    }
    return worst / scale;
  };
  int best_m = 1;
  double best = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= n_t / 2; ++m) {
    const double mm = lag_mismatch(m);
    if (mm <= options.tie_tolerance) {
      out.period = m * dt;
      out.best_candidate = m * dt;
      out.mismatch = mm;
      return out;
    }
    if (mm < best) best = mm, best_m = m;
  }

  // Off-grid period: golden section on the continuous shift over a subset
  // of sample times.
  const int stride = std::max(1, n_t / 16);
  auto shift_mismatch = [&](double T) {
    double worst = 0.0;
    for (int i = 0; i < n_t; i += stride) {
      const double a = s[static_cast<std::size_t>(i)], b = stat_at(t0 + i * dt + T);
      if (std::isfinite(a) && std::isfinite(b)) worst = std::max(worst, std::abs(b - a));
    }
    return worst / scale;
  };
  constexpr double kGolden = 0.6180339887498949;
  double a = (best_m - 1) * dt, b = (best_m + 1) * dt;
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double fc = shift_mismatch(c), fd = shift_mismatch(d);
  while (b - a > 1e-6 * dt) {
    if (fc < fd) {
      b = d, d = c, fd = fc;
      c = b - kGolden * (b - a);
      fc = shift_mismatch(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + kGolden * (b - a);
      fd = shift_mismatch(d);
    }
  }
  const double T = 0.5 * (a + b);
  out.best_candidate = T;
  out.mismatch = shift_mismatch(T);
  if (out.mismatch <= std::sqrt(options.tie_tolerance)) out.period = T;
  return out;
}

std::vector<DecayPoint> decay_profile(const SolutionSpec& spec, const Window& window, const std::vector<double>& times,
                                      int nx, int ny) {
  if (times.empty()) throw UsageError("decay profile needs at least one time");
  std::vector<DecayPoint> out;
  for (double t : times) {
    const FieldGrid g = sample_field(spec, FieldQuantity::U, window, t, nx, ny);
    const GridPeak p = refine_max(spec, g, analyze_extrema(g).global_max);
    out.push_back({t, p.value, p.x, p.y});
  }
  return out;
}

double reflection_defect_y(const FieldGrid& a, const FieldGrid& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (int iy = 0; iy < a.ny; ++iy)
    for (int ix = 0; ix < a.nx; ++ix) {
      const int jy = a.ny - 1 - iy;
      if (a.valid(ix, iy) != b.valid(ix, jy)) return std::numeric_limits<double>::infinity();
      if (a.valid(ix, iy)) worst = std::max(worst, std::abs(a.at(ix, iy) - b.at(ix, jy)));
    }
  return worst;
}

double point_reflection_defect(const FieldGrid& a, const FieldGrid& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (int iy = 0; iy < a.ny; ++iy)
    for (int ix = 0; ix < a.nx; ++ix) {
      const int jx = a.nx - 1 - ix, jy = a.ny - 1 - iy;
      if (a.valid(ix, iy) != b.valid(jx, jy)) return std::numeric_limits<double>::infinity();
      if (a.valid(ix, iy)) worst = std::max(worst, std::abs(a.at(ix, iy) - b.at(jx, jy)));
    }
  return worst;
}

double pointwise_defect(const FieldGrid& a, const FieldGrid& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (a.mask[i] && b.mask[i]) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

std::string AnalyticsResult::to_text() const {
  std::string out;
  char buf[256];
  auto peak_line = [&](const std::string& key, const GridPeak& p) {
    std::snprintf(buf, sizeof buf, "%s: %.12g at %.9g %.9g\n", key.c_str(), p.value, p.x, p.y);
    out += buf;
  };
  if (global_max) peak_line("global_max", *global_max);
  if (global_max || !local_maxima.empty()) {
    std::snprintf(buf, sizeof buf, "local_maxima: %zu\n", local_maxima.size());
    out += buf;
    for (std::size_t i = 0; i < local_maxima.size(); ++i) peak_line("local_max_" + std::to_string(i), local_maxima[i]);
  }
  if (period) {
    if (period->constant)
      out += "period: none (constant statistic)\n";
    else if (period->period)
      std::snprintf(buf, sizeof buf, "period: %.12g\n", *period->period), out += buf;
    else
      std::snprintf(buf, sizeof buf, "period: none (best candidate %.12g)\n", period->best_candidate), out += buf;
    std::snprintf(buf, sizeof buf, "period_resolution: %.12g\nperiod_mismatch: %.6e\n", period->resolution,
                  period->mismatch);
    out += buf;
  }
  for (std::size_t i = 0; i < decay_series.size(); ++i) {
    const auto& d = decay_series[i];
    std::snprintf(buf, sizeof buf, "decay_%zu: t %.12g max %.12g at %.9g %.9g\n", i, d.t, d.max, d.x, d.y);
    out += buf;
  }
  for (std::size_t i = 1; i < decay_series.size(); ++i) {
    std::snprintf(buf, sizeof buf, "decay_ratio_%zu: %.6e\n", i, decay_series[i].max / decay_series[i - 1].max);
    out += buf;
  }
  for (const auto& [name, v] : symmetry_defects) {
    std::snprintf(buf, sizeof buf, "symmetry_%s: %.6e\n", name.c_str(), v);
    out += buf;
  }
  return out;
}

}  // namespace dsvs
