#include "dsvs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <map>
#include <vector>

#include "dsvs/errors.hpp"

namespace dsvs {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Neumaier compensated sum, so means do not depend on accumulation order
/// beyond the last bit.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class Reduction {
 public:
  explicit Reduction(std::string name) { report_.check_name = std::move(name); }

  ResidualReport& report() { return report_; }

  /// abs: |residual|; scale: summed magnitudes of the cancelling terms;
  /// natural: the check's natural scale, or 0 when it has none.
  void add(const CoordinatePoint& pt, double abs, double scale, double natural = 0.0) {
    const double rel = scale > 0.0 ? abs / scale : (abs == 0.0 ? 0.0 : kInf);
    ++report_.samples;
    abs_sum_.add(abs);
    rel_sum_.add(rel);
    report_.max_abs = std::max(report_.max_abs, abs);
    if (natural > 0.0) report_.max_rel_natural = std::max(report_.max_rel_natural, abs / natural);
    if (report_.samples == 1 || rel > report_.max_rel) {
      report_.max_rel = rel;
      report_.worst_point = pt;
    }
  }

  ResidualReport finish() {
    if (report_.samples > 0) {
      report_.mean_abs = abs_sum_.value() / report_.samples;
      report_.mean_rel = rel_sum_.value() / report_.samples;
    }
    return report_;
  }

 private:
  ResidualReport report_;
  CompensatedSum abs_sum_;
  CompensatedSum rel_sum_;
};

std::vector<CoordinatePoint> window_points(const Window& w, double t, int nx, int ny) {
  if (nx < 2 || ny < 2) throw UsageError("residual grids need at least 2 samples per axis");
  std::vector<CoordinatePoint> pts;
  pts.reserve(static_cast<std::size_t>(nx) * ny);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const double x = grid_coordinate(w.x0, w.x1, ix, nx);
      const double y = grid_coordinate(w.y0, w.y1, iy, ny);
      if (w.contains(x, y)) pts.push_back({x, y, t});
    }
  return pts;
}

bool near_pole(const SolutionSpec& spec, double zeta, double eta) {
  return spec.p().near_pole(zeta) || spec.q().near_pole(eta);
}

std::string not_applicable_note(const ConsistencyReport& c, double threshold) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "not applicable: inconsistent separation (c1/c2 variation %.3e > %.1e)",
                c.variation(), threshold);
  return buf;
}

bool consistent(const ConsistencyReport& c, double threshold) {
  const double v = c.variation();
  return std::isfinite(v) && v <= threshold;
}

/// 4 det p_zeta q_eta / f^2 as a (zeta, eta, t) jet.
SpaceTimeJet intensity_jet(const SolutionSpec& spec, const CoordinatePoint& pt) {
  const auto Ps = embed(spec.p().jet<3>(pt.zeta(), pt.t).partial(0), 0);
  const auto Qs = embed(spec.q().jet<3>(pt.eta(), pt.t).partial(0), 1);
  const SpaceTimeJet f = eval_f(spec, pt);
  return (4.0 * spec.coeffs().det()) * Ps * Qs / (f * f);
}

}  // namespace

std::string ResidualReport::to_text() const {
  char buf[160];
  std::string out;
  auto line = [&](const char* key, const char* fmt, auto value) {
    std::snprintf(buf, sizeof buf, fmt, value);
    out += key;
    out += ": ";
    out += buf;
    out += '\n';
  };
  out += "check: " + check_name + "\n";
  out += std::string("applicable: ") + (applicable ? "yes" : "no") + "\n";
  if (!note.empty()) out += "note: " + note + "\n";
  line("samples", "%d", samples);
  line("max_abs", "%.6e", max_abs);
  line("mean_abs", "%.6e", mean_abs);
  line("max_rel", "%.6e", max_rel);
  line("mean_rel", "%.6e", mean_rel);
  line("max_rel_natural", "%.6e", max_rel_natural);
  std::snprintf(buf, sizeof buf, "%.9g %.9g %.9g", worst_point.x, worst_point.y, worst_point.t);
  out += std::string("worst_point: ") + buf + "\n";
  line("masked", "%d", masked);
  line("singular", "%d", singular);
  line("sign_violations", "%d", sign_violations);
  line("degenerate", "%d", degenerate);
  line("unresolved", "%d", unresolved);
  return out;
}

ConsistencyReport window_consistency(const SeparatedSolution& aux, const Window& window, double t, int n) {
  double zlo = (window.x0 - window.y1) * kInvSqrt2, zhi = (window.x1 - window.y0) * kInvSqrt2;
  double elo = (window.x0 + window.y0) * kInvSqrt2, ehi = (window.x1 + window.y1) * kInvSqrt2;
  if (window.rotated_bound) {
    const double b = *window.rotated_bound;
    zlo = std::max(zlo, -b), zhi = std::min(zhi, b);
    elo = std::max(elo, -b), ehi = std::min(ehi, b);
  }
  std::vector<double> zs(static_cast<std::size_t>(n)), es(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    zs[static_cast<std::size_t>(i)] = grid_coordinate(zlo, zhi, i, n);
    es[static_cast<std::size_t>(i)] = grid_coordinate(elo, ehi, i, n);
  }
  return consistency_c1_c2(aux, zs, es, t);
}

BilinearReports bilinear_residuals(const SeparatedSolution& aux, const Window& window, double t,
                                   const VerifyOptions& options) {
  const auto& spec = aux.spec();
  const auto pts = window_points(window, t, options.nx, options.ny);
  BilinearReports out;
  Reduction line2("bilinear2");
  Reduction line1("bilinear1");

  // Line 2 needs only f and the amplitudes.
  std::vector<CoordinatePoint> usable;
  for (const auto& pt : pts) {
    const double z = pt.zeta(), e = pt.eta();
    if (near_pole(spec, z, e)) {
      ++line2.report().masked;
      continue;
    }
    const SpaceTimeJet f = eval_f(spec, pt);
    if (!f.is_finite() || std::abs(f.value()) < kDivisionGuard) {
      ++line2.report().singular;
      continue;
    }
    const Jet P1 = aux.p1(z, t), Q1 = aux.q1(e, t);
    if (!P1.is_finite() || !Q1.is_finite()) {
      ++line2.report().sign_violations;
      continue;
    }
    const double g2 = P1.value() * P1.value() * Q1.value() * Q1.value();
    if (g2 == 0.0) ++line2.report().degenerate;
    const double fzz = f.derivative(axes::zeta_eta), fz = f.derivative(axes::zeta), fe = f.derivative(axes::eta);
    const double res = 2.0 * hirota(f, f, axes::zeta_eta) - g2;
    const double scale = 4.0 * (std::abs(f.value() * fzz) + std::abs(fz * fe)) + g2;
    line2.add(pt, std::abs(res), scale, g2);
    usable.push_back(pt);
  }
  out.line2 = line2.finish();

  out.consistency = window_consistency(aux, window, t);
  auto& r1 = line1.report();
  r1.masked = out.line2.masked;
  r1.singular = out.line2.singular;
  r1.sign_violations = out.line2.sign_violations;
  if (!consistent(out.consistency, options.consistency_threshold)) {
    r1.applicable = false;
    r1.note = not_applicable_note(out.consistency, options.consistency_threshold);
    out.line1 = line1.finish();
    return out;
  }

  std::vector<double> zs, es;
  for (const auto& pt : usable) {
    zs.push_back(pt.zeta());
    es.push_back(pt.eta());
  }
  try {
    const PhaseTable rt(aux, Side::zeta, zs, t), st(aux, Side::eta, es, t);
    const double beta = spec.funcs().beta(t), gamma = spec.funcs().gamma(t);
    for (const auto& pt : usable) {
      const double z = pt.zeta(), e = pt.eta();
      const Jet P1 = aux.p1(z, t), Q1 = aux.q1(e, t);
      const Jet r = aux.phase_jet(Side::zeta, z, t, rt.at(z));
      const Jet s = aux.phase_jet(Side::eta, e, t, st.at(e));
      const Background bg = aux.background(z, e, t, r, s);
      if (bg.singular) {
        ++r1.singular;
        continue;
      }
      const SpaceTimeJet f = eval_f(spec, pt);
      const SpaceTimeJet A = embed(P1, 0) * embed(Q1, 1);
      const SpaceTimeJet theta = embed(r, 0) + embed(s, 1);
      const ComplexTaylor<3, 2> g{A * cos(theta), A * sin(theta)};
      const cplx gv{g.re.value(), g.im.value()};
      const double fv = f.value();
      const double gg = A.value() * A.value();

      const cplx Dt = hirota(g, f, axes::t);
      const cplx Dxx = hirota(g, f, axes::zeta_zeta) + hirota(g, f, axes::eta_eta);
      const double Dff = hirota(f, f, axes::zeta_eta);
      const cplx terms[5] = {
          kI * fv * Dt,
          0.5 * beta * fv * Dxx,
          -0.5 * beta * gv * gg,
          beta * gv * (Dff + (bg.p0 + bg.q0) * fv * fv),
          -kI * gamma * gv * fv * fv,
      };
      cplx res{};
      double scale = 0.0;
      for (const cplx& term : terms) {
        res += term;
        scale += std::abs(term);
      }
      // Line 1 is f^3 times the envelope equation for u = g / f; dividing
      // by |f|^3 keeps the absolute residual on the scale of u.
      const double f3 = std::abs(fv * fv * fv);
      line1.add(pt, std::abs(res) / f3, scale / f3, std::abs(gv / fv));
    }
  } catch (const QuadratureError& err) {
    r1.applicable = false;
    r1.note = std::string("not applicable: phase quadrature failed: ") + err.what();
  }
  out.line1 = line1.finish();
  return out;
}

PdeReports pde_residuals(const SeparatedSolution& aux, const Window& window, double t, const PdeOptions& options) {
  const auto& spec = aux.spec();
  const auto pts = window_points(window, t, options.nx, options.ny);
  PdeReports out;

  // Line 2: 4 phi_ze by a tensor-product difference of the sampled phi,
  // (d_zeta + d_eta)^2 U from jets. The background p0(zeta) + q0(eta) is
  // annihilated exactly by the mixed difference and is left out of phi.
  {
    Reduction line2("pde2");
    auto& rep = line2.report();
    const Stencil d1(1, options.accuracy, options.h_constraint);
    const int H = d1.half();
    const double h = d1.h();
    const auto w = d1.weights();
    for (const auto& pt : pts) {
      const double z = pt.zeta(), e = pt.eta();
      if (near_pole(spec, z - H * h, e - H * h) || near_pole(spec, z + H * h, e + H * h) || near_pole(spec, z, e)) {
        ++rep.masked;
        continue;
      }
      const SpaceTimeJet U = intensity_jet(spec, pt);
      if (!U.is_finite()) {
        ++rep.singular;
        continue;
      }
      if (U.value() < 0.0) ++rep.sign_violations;
      double mixed = 0.0;
      bool ok = true;
      for (int i = -H; i <= H && ok; ++i) {
        const double wi = w[static_cast<std::size_t>(i + H)];
        if (wi == 0.0) continue;
        for (int j = -H; j <= H; ++j) {
          const double wj = w[static_cast<std::size_t>(j + H)];
          if (wj == 0.0) continue;
          const auto phi = eval_phi(spec, CoordinatePoint::from_rotated(z + i * h, e + j * h, t), 0.0, 0.0);
          if (phi.singular || !std::isfinite(phi.value)) {
            ok = false;
            break;
          }
          mixed += wi * wj * phi.value;
        }
      }
      if (!ok) {
        ++rep.singular;
        continue;
      }
      mixed /= h * h;
      const double Uzz = U.derivative(axes::zeta_zeta), Uee = U.derivative(axes::eta_eta);
      const double Uze = U.derivative(axes::zeta_eta);
      const double res = 4.0 * mixed - (Uzz + Uee + 2.0 * Uze);
      line2.add(pt, std::abs(res), 4.0 * std::abs(mixed) + std::abs(Uzz) + std::abs(Uee) + 2.0 * std::abs(Uze));
    }
    out.line2 = line2.finish();
  }

  // Line 1: differences of the sampled envelope u in zeta, eta and t.
  Reduction line1("pde1");
  auto& rep = line1.report();
  const ConsistencyReport consistency = window_consistency(aux, window, t);
  if (!consistent(consistency, options.consistency_threshold)) {
    rep.applicable = false;
    rep.note = not_applicable_note(consistency, options.consistency_threshold);
    out.line1 = line1.finish();
    return out;
  }
  const Stencil d1(1, options.accuracy, options.h_envelope);
  const Stencil d2(2, options.accuracy, options.h_envelope);
  const double h = options.h_envelope;
  const int H = std::max(d1.half(), d2.half());

  std::vector<CoordinatePoint> usable;
  for (const auto& pt : pts) {
    if (near_pole(spec, pt.zeta() - H * h, pt.eta() - H * h) || near_pole(spec, pt.zeta() + H * h, pt.eta() + H * h) ||
        near_pole(spec, pt.zeta(), pt.eta()))
      ++rep.masked;
    else
      usable.push_back(pt);
  }

  try {
    // Phase tables: at t for every spatial stencil node, at t + k h for the
    // centres only.
    std::vector<double> zs0, es0, zs, es;
    for (const auto& pt : usable) {
      zs.push_back(pt.zeta());
      es.push_back(pt.eta());
      for (int m = -H; m <= H; ++m) {
        zs0.push_back(pt.zeta() + m * h);
        es0.push_back(pt.eta() + m * h);
      }
    }
    const PhaseTable r0(aux, Side::zeta, zs0, t), s0(aux, Side::eta, es0, t);
    std::map<int, std::pair<PhaseTable, PhaseTable>> shifted;
    for (int k = -d1.half(); k <= d1.half(); ++k)
      if (k != 0)
        shifted.emplace(k, std::pair{PhaseTable(aux, Side::zeta, zs, t + k * h), PhaseTable(aux, Side::eta, es, t + k * h)});

    const double beta = spec.funcs().beta(t), gamma = spec.funcs().gamma(t);
    std::vector<cplx> along_z(static_cast<std::size_t>(d2.width())), along_e(along_z.size()),
        along_t(static_cast<std::size_t>(d1.width()));
    for (const auto& pt : usable) {
      const double z = pt.zeta(), e = pt.eta();
      const auto u_at = [&](double zz, double ee, double tt, double r, double s) {
        return eval_u(spec, CoordinatePoint::from_rotated(zz, ee, tt), r, s);
      };
      const auto centre = u_at(z, e, t, r0.at(z).value(), s0.at(e).value());
      if (centre.sign_violating) {
        ++rep.sign_violations;
        continue;
      }
      bool ok = !centre.singular;
      for (int m = -d2.half(); m <= d2.half() && ok; ++m) {
        const auto a = u_at(z + m * h, e, t, r0.at(z + m * h).value(), s0.at(e).value());
        const auto b = u_at(z, e + m * h, t, r0.at(z).value(), s0.at(e + m * h).value());
        ok = !a.singular && !b.singular && !a.sign_violating && !b.sign_violating;
        along_z[static_cast<std::size_t>(m + d2.half())] = a.value;
        along_e[static_cast<std::size_t>(m + d2.half())] = b.value;
      }
      for (int k = -d1.half(); k <= d1.half() && ok; ++k) {
        cplx v = centre.value;
        if (k != 0) {
          const auto& [rk, sk] = shifted.at(k);
          const auto a = u_at(z, e, t + k * h, rk.at(z).value(), sk.at(e).value());
          ok = !a.singular && !a.sign_violating;
          v = a.value;
        }
        along_t[static_cast<std::size_t>(k + d1.half())] = v;
      }
      const Jet r = aux.phase_jet(Side::zeta, z, t, r0.at(z));
      const Jet s = aux.phase_jet(Side::eta, e, t, s0.at(e));
      const double turn = h * std::max({std::abs(r.d1()), std::abs(s.d1()), std::abs(r.dt() + s.dt())});
      if (!(turn <= options.max_phase_step)) {
        ++rep.unresolved;
        continue;
      }
      const Background bg = aux.background(z, e, t, r, s);
      const auto phi = eval_phi(spec, pt, bg.p0, bg.q0);
      if (!ok || bg.singular || phi.singular) {
        ++rep.singular;
        continue;
      }
      auto apply = [](const std::vector<cplx>& v, const Stencil& st) {
        std::vector<double> re(v.size()), im(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) re[i] = v[i].real(), im[i] = v[i].imag();
        return cplx{fd_derivative(re, st), fd_derivative(im, st)};
      };
      const cplx u = centre.value;
      const cplx ut = apply(along_t, d1);
      const cplx lap = apply(along_z, d2) + apply(along_e, d2);
      const cplx terms[5] = {kI * ut, 0.5 * beta * lap, -0.5 * beta * std::norm(u) * u, beta * u * phi.value,
                             -kI * gamma * u};
      cplx res{};
      double scale = 0.0;
      for (const cplx& term : terms) {
        res += term;
        scale += std::abs(term);
      }
      line1.add(pt, std::abs(res), scale);
    }
  } catch (const QuadratureError& err) {
    rep.applicable = false;
    rep.note = std::string("not applicable: phase quadrature failed: ") + err.what();
  }
  out.line1 = line1.finish();
  return out;
}

ConvergenceReport pde_convergence(const SeparatedSolution& aux, const Window& window, double t,
                                  const PdeOptions& options) {
  ConvergenceReport out;
  out.coarse = pde_residuals(aux, window, t, options);
  PdeOptions half = options;
  half.h_envelope /= 2.0;
  half.h_constraint /= 2.0;
  out.fine = pde_residuals(aux, window, t, half);
  auto order = [](const ResidualReport& a, const ResidualReport& b) {
    if (!a.applicable || !b.applicable || !(a.max_abs > 0.0) || !(b.max_abs > 0.0))
      return std::numeric_limits<double>::quiet_NaN();
    return std::log2(a.max_abs / b.max_abs);
  };
  out.order_line1 = order(out.coarse.line1, out.fine.line1);
  out.order_line2 = order(out.coarse.line2, out.fine.line2);
  return out;
}

GridScan singularity_scan(const SolutionSpec& spec, const Window& window, double t, int nx, int ny,
                          bool mask_poles) {
  return scan_grid(spec, window, t, nx, ny, mask_poles);
}

std::string scan_to_text(const GridScan& scan) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "grid: %dx%d\nsamples: %d\npole_points: %d\nsingular_points: %d\nsign_violations: %d\n"
                "degenerate_points: %d\ndet_zero: %s\nmin_abs_f: %.9g\nmin_f_point: %.9g %.9g %.9g\n"
                "sign_change_cells: %zu\n",
                scan.nx, scan.ny, scan.samples, scan.pole_points, scan.singular_points, scan.sign_violations,
                scan.degenerate_points, scan.det_zero ? "yes" : "no", scan.min_abs_f, scan.min_f_point.point.x,
                scan.min_f_point.point.y, scan.min_f_point.point.t, scan.sign_change_cells.size());
  return buf;
}

}  // namespace dsvs
