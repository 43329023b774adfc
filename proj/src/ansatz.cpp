#include "dsvs/ansatz.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "dsvs/errors.hpp"

namespace dsvs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct FirstOrder {
  double p, p_s, q, q_s;
};

FirstOrder first_order(const SolutionSpec& spec, double zeta, double eta, double t) {
  const auto p = spec.p().jet<1>(zeta, t);
  const auto q = spec.q().jet<1>(eta, t);
  return {p.value(), p.d1(), q.value(), q.d1()};
}

double f_value(const SeparationCoefficients& a, double p, double q) {
  return a.a0() + a.a1() * p + a.a2() * q + a.a3() * p * q;
}

bool below_guard(double denom, double numer) {
  return !(std::abs(denom) >= kDivisionGuard * (1.0 + std::abs(numer)));
}

bool degenerate_at(const SeparationCoefficients& a, const FirstOrder& v) {
  const double tol = kDegeneracyTolerance;
  return std::abs(a.det()) <= tol * (std::abs(a.a0() * a.a3()) + std::abs(a.a1() * a.a2())) ||
         std::abs(v.p_s) <= tol * (1.0 + std::abs(v.p)) || std::abs(v.q_s) <= tol * (1.0 + std::abs(v.q));
}

}  // namespace

SpaceTimeJet eval_f(const SolutionSpec& spec, const CoordinatePoint& pt) {
  const auto& a = spec.coeffs();
  const auto P = embed(spec.p().jet<2>(pt.zeta(), pt.t), 0);
  const auto Q = embed(spec.q().jet<2>(pt.eta(), pt.t), 1);
  return a.a0() + a.a1() * P + a.a2() * Q + a.a3() * (P * Q);
}

IntensitySample eval_U(const SolutionSpec& spec, const CoordinatePoint& pt) {
  const auto& a = spec.coeffs();
  const auto v = first_order(spec, pt.zeta(), pt.eta(), pt.t);
  const double f = f_value(a, v.p, v.q);
  const double numer = 4.0 * a.det() * v.p_s * v.q_s;
  IntensitySample out;
  out.sign_violating = numer < 0.0;
  if (below_guard(f * f, numer) || !std::isfinite(f) || !std::isfinite(numer)) {
    out.singular = true;
    out.value = kNaN;
    return out;
  }
  out.value = numer / (f * f);
  return out;
}

EnvelopeSample eval_u(const SolutionSpec& spec, const CoordinatePoint& pt, double phase_r, double phase_s) {
  const auto& a = spec.coeffs();
  const auto v = first_order(spec, pt.zeta(), pt.eta(), pt.t);
  const double f = f_value(a, v.p, v.q);
  const double radicand = a.det() * v.p_s * v.q_s;
  EnvelopeSample out;
  if (radicand < 0.0) {
    out.sign_violating = true;
    out.value = {kNaN, kNaN};
    return out;
  }
  const double amplitude = 2.0 * spec.delta1() * spec.delta2() * std::sqrt(radicand);
  if (below_guard(f, amplitude) || !std::isfinite(f)) {
    out.singular = true;
    out.value = {kNaN, kNaN};
    return out;
  }
  out.value = std::polar(1.0, phase_r + phase_s) * (amplitude / f);
  return out;
}

PhiSample eval_phi(const SolutionSpec& spec, const CoordinatePoint& pt, double p0, double q0) {
  const auto F = eval_f(spec, pt);
  const double f = F.value();
  const double fz = F.derivative(axes::zeta), fe = F.derivative(axes::eta);
  const double second =
      F.derivative(axes::zeta_zeta) + 2.0 * F.derivative(axes::zeta_eta) + F.derivative(axes::eta_eta);
  PhiSample out;
  if (below_guard(f, second) || !F.is_finite()) {
    out.singular = true;
    out.value = kNaN;
    return out;
  }
  const double grad = (fz + fe) / f;
  out.value = -grad * grad + second / f + p0 + q0;
  return out;
}

PhiSample eval_phi_log_form(const SolutionSpec& spec, const CoordinatePoint& pt, double p0, double q0) {
  auto F = eval_f(spec, pt);
  PhiSample out;
  if (below_guard(F.value(), 1.0) || !F.is_finite()) {
    out.singular = true;
    out.value = kNaN;
    return out;
  }
  if (F.value() < 0.0) F = -F;
  const auto L = log(F);
  out.value = L.derivative(axes::zeta_zeta) + 2.0 * L.derivative(axes::zeta_eta) +
              L.derivative(axes::eta_eta) + p0 + q0;
  return out;
}

GridScan scan_grid(const SolutionSpec& spec, const Window& window, double t, int nx, int ny, bool mask_poles) {
  if (nx < 2 || ny < 2) throw UsageError("admissibility scan needs at least 2 samples per axis");
  const auto& a = spec.coeffs();
  GridScan scan;
  scan.nx = nx;
  scan.ny = ny;
  scan.min_abs_f = std::numeric_limits<double>::infinity();
  scan.det_zero = std::abs(a.det()) <= kDegeneracyTolerance * (std::abs(a.a0() * a.a3()) + std::abs(a.a1() * a.a2()));

  std::vector<double> fs(static_cast<std::size_t>(nx) * ny, kNaN);
  bool have_sign_violation = false, have_singular = false;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const double x = grid_coordinate(window.x0, window.x1, ix, nx);
      const double y = grid_coordinate(window.y0, window.y1, iy, ny);
      if (!window.contains(x, y)) continue;
      const CoordinatePoint pt{x, y, t};
      const double z = pt.zeta(), e = pt.eta();
      if (spec.p().near_pole(z) || spec.q().near_pole(e)) {
        ++scan.pole_points;
        if (mask_poles) continue;
      }
      ++scan.samples;
      const auto v = first_order(spec, z, e, t);
      const double f = f_value(a, v.p, v.q);
      const double w = a.det() * v.p_s * v.q_s;
      fs[static_cast<std::size_t>(iy) * nx + ix] = f;
      if (std::abs(f) < scan.min_abs_f || std::isnan(f)) {
        scan.min_abs_f = std::isnan(f) ? 0.0 : std::abs(f);
        scan.min_f_point = {pt, f};
      }
      if (below_guard(f, 4.0 * w) || !std::isfinite(f)) {
        ++scan.singular_points;
        if (!have_singular) scan.first_singular = {pt, f};
        have_singular = true;
      }
      if (w < 0.0) {
        ++scan.sign_violations;
        if (!have_sign_violation) scan.first_sign_violation = {pt, 4.0 * w / (f * f)};
        have_sign_violation = true;
      }
      if (degenerate_at(a, v)) ++scan.degenerate_points;
    }
  }
  for (int iy = 0; iy + 1 < ny; ++iy) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      const double c[4] = {fs[static_cast<std::size_t>(iy) * nx + ix], fs[static_cast<std::size_t>(iy) * nx + ix + 1],
                           fs[static_cast<std::size_t>(iy + 1) * nx + ix],
                           fs[static_cast<std::size_t>(iy + 1) * nx + ix + 1]};
      bool pos = false, neg = false;
      for (double v : c) {
        if (std::isnan(v)) continue;
        pos |= v > 0.0;
        neg |= v < 0.0;
      }
      if (pos && neg) scan.sign_change_cells.push_back({ix, iy});
    }
  }
  return scan;
}

std::string_view verdict_name(AdmissibilityVerdict v) {
  switch (v) {
    case AdmissibilityVerdict::admissible: return "admissible";
    case AdmissibilityVerdict::degenerate: return "degenerate";
    case AdmissibilityVerdict::sign_violating: return "sign-violating";
    case AdmissibilityVerdict::singular: return "singular";
  }
  return "unknown";
}

AdmissibilityReport check_admissibility(const SolutionSpec& spec, const Window& window, double t, int nx,
                                        int ny) {
  AdmissibilityReport report;
  report.scan = scan_grid(spec, window, t, nx, ny);
  const auto& s = report.scan;
  char buf[256];
  if (s.samples == 0) {
    report.verdict = AdmissibilityVerdict::singular;
    report.diagnostic = "window entirely masked";
  } else if (s.det_zero || s.degenerate_points == s.samples) {
    report.verdict = AdmissibilityVerdict::degenerate;
    std::snprintf(buf, sizeof buf, "degenerate: U = 0 on the whole window at t = %.17g%s", t,
                  s.det_zero ? " (a0 a3 - a1 a2 = 0)" : " (p_zeta or q_eta vanishes)");
    report.diagnostic = buf;
  } else if (s.singular_points > 0 || !s.sign_change_cells.empty()) {
    report.verdict = AdmissibilityVerdict::singular;
    std::snprintf(buf, sizeof buf, "singular: f vanishes on the window (min |f| = %.3g at x = %.6g, y = %.6g; %zu sign-change cells)",
                  s.min_abs_f, s.min_f_point.point.x, s.min_f_point.point.y, s.sign_change_cells.size());
    report.diagnostic = buf;
  } else if (s.sign_violations > 0) {
    report.verdict = AdmissibilityVerdict::sign_violating;
    std::snprintf(buf, sizeof buf, "sign-violating: det p_zeta q_eta < 0 at %d points (first x = %.6g, y = %.6g)",
                  s.sign_violations, s.first_sign_violation.point.x, s.first_sign_violation.point.y);
    report.diagnostic = buf;
  } else {
    report.verdict = AdmissibilityVerdict::admissible;
    std::snprintf(buf, sizeof buf, "admissible: min |f| = %.6g", s.min_abs_f);
    report.diagnostic = buf;
  }
  return report;
}

}  // namespace dsvs
