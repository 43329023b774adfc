#include "dsvs/auxiliary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "dsvs/errors.hpp"
#include "dsvs/quadrature.hpp"

namespace dsvs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Jet time_jet(const TimeFunction& fn, double t) { return fn.jet<2, 2>(t, 1); }

/// |c0| with the sign of `orientation`.
Jet oriented_c0(const TimeFunction& c0, double t, double orientation) {
  Jet c = time_jet(c0, t);
  if (c.value() < 0.0) c = -c;
  return orientation < 0.0 ? -c : c;
}

}  // namespace

AmplitudeJets derive_amplitudes(const SolutionSpec& spec, const CoordinatePoint& pt) {
  SeparatedSolution aux(spec);
  AmplitudeJets out{aux.p1(pt.zeta(), pt.t), aux.q1(pt.eta(), pt.t), false};
  // Each factor orients c0 on its own, so a mismatch between the two
  // orientations is the only way det p_zeta q_eta < 0 shows up here.
  const double p_s = spec.p().jet<1>(pt.zeta(), pt.t).d1();
  const double q_s = spec.q().jet<1>(pt.eta(), pt.t).d1();
  out.radicand_violation =
      !out.p1.is_finite() || !out.q1.is_finite() || spec.coeffs().det() * p_s * q_s < 0.0;
  return out;
}

PhaseGradientJets derive_phase_gradients(const SolutionSpec& spec, const CoordinatePoint& pt,
                                         const AuxiliaryOptions& options) {
  SeparatedSolution aux(spec, options);
  return {aux.r_zeta(pt.zeta(), pt.t), aux.s_eta(pt.eta(), pt.t)};
}

SeparatedSolution::SeparatedSolution(SolutionSpec spec, AuxiliaryOptions options)
    : spec_(std::move(spec)), options_(std::move(options)) {
  if (!(options_.quadrature_step > 0.0)) throw UsageError("quadrature step must be positive");
}

Jet SeparatedSolution::p1(double zeta, double t) const {
  const auto p_s = spec_.p().jet<3>(zeta, t).partial(0);
  const Jet c0 = oriented_c0(spec_.funcs().c0, t, p_s.value());
  return spec_.delta1() * sqrt(c0 * p_s);
}

Jet SeparatedSolution::q1(double eta, double t) const {
  const double det = spec_.coeffs().det();
  const auto q_s = spec_.q().jet<3>(eta, t).partial(0);
  const Jet c0 = oriented_c0(spec_.funcs().c0, t, det * q_s.value());
  // c0 is a scale, not a vanishing locus: the relative division guard would
  // reject large q_eta against c0 = 1.
  return 2.0 * spec_.delta2() * sqrt(det * q_s * reciprocal(c0));
}

Jet SeparatedSolution::r_zeta(double zeta, double t) const {
  const auto& a = spec_.coeffs();
  const auto& fn = spec_.funcs();
  const auto P3 = spec_.p().jet<3>(zeta, t);
  const Jet P = P3.truncate<2>();
  const Jet lin = a.a2() + a.a3() * P;
  const Jet numer = -P3.partial(1) + time_jet(options_.c1, t) * lin * lin + time_jet(options_.c2, t) * lin -
                    a.det() * time_jet(fn.c3, t);
  return numer / (time_jet(fn.beta, t) * P3.partial(0)) + options_.r_zeta_offset;
}

Jet SeparatedSolution::s_eta(double eta, double t) const {
  const auto& a = spec_.coeffs();
  const auto& fn = spec_.funcs();
  const auto Q3 = spec_.q().jet<3>(eta, t);
  const Jet Q = Q3.truncate<2>();
  const Jet lin = a.a1() + a.a3() * Q;
  const Jet numer = -Q3.partial(1) - time_jet(fn.c3, t) * lin * lin - time_jet(options_.c2, t) * lin +
                    a.det() * time_jet(fn.c4, t);
  return numer / (time_jet(fn.beta, t) * Q3.partial(0)) + options_.s_eta_offset;
}

double SeparatedSolution::anchor_for(Side side, double coord) const {
  const auto& profile = side == Side::zeta ? spec_.p() : spec_.q();
  const double anchor = side == Side::zeta ? options_.zeta_anchor : options_.eta_anchor;
  const auto poles = profile.poles_between(anchor, coord);
  if (poles.empty()) return anchor;
  const double pole = coord > anchor ? poles.back() : poles.front();
  const double offset = std::max(2.0 * profile.pole_margin(), 0.1);
  return coord > pole ? pole + offset : pole - offset;
}

std::vector<Taylor<1, 2>> SeparatedSolution::integrate_phase(Side side, std::span<const double> coords,
                                                             double t) const {
  auto integrand = [&](double xi) { return time_slice(gradient(side, xi, t)); };
  auto segment = [&](double from, double to) {
    const int n = static_cast<int>(std::ceil(std::abs(to - from) / options_.quadrature_step));
    return simpson(integrand, from, to, std::max(n, 2));
  };

  std::map<double, std::vector<std::size_t>> by_anchor;
  for (std::size_t i = 0; i < coords.size(); ++i) by_anchor[anchor_for(side, coords[i])].push_back(i);

  // Walk outward from each anchor so consecutive coordinates share the
  // accumulated integral.
  std::vector<Taylor<1, 2>> out(coords.size());
  for (const auto& [anchor, members] : by_anchor) {
    std::vector<std::size_t> up, down;
    for (std::size_t i : members) (coords[i] >= anchor ? up : down).push_back(i);
    std::sort(up.begin(), up.end(), [&](std::size_t i, std::size_t j) { return coords[i] < coords[j]; });
    std::sort(down.begin(), down.end(), [&](std::size_t i, std::size_t j) { return coords[i] > coords[j]; });
    for (const auto* run : {&up, &down}) {
      double prev = anchor;
      Taylor<1, 2> acc;
      for (std::size_t i : *run) {
        if (coords[i] != prev) acc += segment(prev, coords[i]);
        prev = coords[i];
        out[i] = acc;
      }
    }
  }
  return out;
}

Jet SeparatedSolution::phase_jet(Side side, double coord, double t, const Taylor<1, 2>& integrated) const {
  return antiderivative<2>(gradient(side, coord, t), integrated);
}

Jet SeparatedSolution::phase(Side side, double coord, double t) const {
  const double c[1] = {coord};
  return phase_jet(side, coord, t, integrate_phase(side, c, t)[0]);
}

Background SeparatedSolution::background(double zeta, double eta, double t, const Jet& r, const Jet& s) const {
  const auto& fn = spec_.funcs();
  const double beta = fn.beta(t);
  const Jet P1 = p1(zeta, t);
  const Jet Q1 = q1(eta, t);
  Background out;
  if (!(std::abs(P1.value()) > 0.0) || !(std::abs(Q1.value()) > 0.0) || beta == 0.0) {
    out.singular = true;
    out.p0 = out.q0 = kNaN;
    return out;
  }
  out.p0 = (fn.c3(t) + r.dt() - 0.5 * beta * (P1.d11() / P1.value() - r.d1() * r.d1())) / beta;
  out.q0 = (-fn.c4(t) + s.dt() - 0.5 * beta * (Q1.d11() / Q1.value() - s.d1() * s.d1())) / beta;
  if (options_.p0_override) out.p0 = *options_.p0_override;
  if (options_.q0_override) out.q0 = *options_.q0_override;
  out.singular = !std::isfinite(out.p0) || !std::isfinite(out.q0);
  return out;
}

PhaseTable::PhaseTable(const SeparatedSolution& aux, Side side, std::vector<double> coords, double t) {
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  const auto slices = aux.integrate_phase(side, coords, t);
  for (std::size_t i = 0; i < coords.size(); ++i) table_.emplace(coords[i], slices[i]);
}

const Taylor<1, 2>& PhaseTable::at(double coord) const {
  const auto it = table_.find(coord);
  if (it == table_.end()) throw std::out_of_range("phase table has no entry for the coordinate");
  return it->second;
}

Background derive_background(const SeparatedSolution& aux, const CoordinatePoint& pt) {
  const Jet r = aux.phase(Side::zeta, pt.zeta(), pt.t);
  const Jet s = aux.phase(Side::eta, pt.eta(), pt.t);
  return aux.background(pt.zeta(), pt.eta(), pt.t, r, s);
}

double ConsistencyReport::variation() const {
  if (!applicable) return std::max(bracket_p_max_abs, bracket_q_max_abs);
  return std::max(c1_variation(), c2_variation());
}

ConsistencyReport consistency_c1_c2(const SeparatedSolution& aux, std::span<const double> zeta_probes,
                                    std::span<const double> eta_probes, double t) {
  const auto& spec = aux.spec();
  const auto& a = spec.coeffs();
  const double beta = spec.funcs().beta(t);
  const double gamma = spec.funcs().gamma(t);
  const double c4 = spec.funcs().c4(t);

  ConsistencyReport rep;
  rep.t = t;
  rep.applicable = a.a3() != 0.0;
  if (!rep.applicable) rep.reason = "not-applicable: the c1, c2 relations divide by a3 = 0";
  rep.c1_min = rep.c2_min = std::numeric_limits<double>::infinity();
  rep.c1_max = rep.c2_max = -std::numeric_limits<double>::infinity();

  for (double z : zeta_probes) {
    if (spec.p().near_pole(z)) continue;
    ++rep.probes;
    const Jet P1 = aux.p1(z, t);
    const Jet R = aux.r_zeta(z, t);
    const double p = spec.p().value(z, t);
    const double bracket =
        P1.dt() / P1.value() + beta * (P1.d1() * R.value() / P1.value() + 0.5 * R.d1()) - gamma - c4;
    if (!std::isfinite(bracket)) {
      ++rep.dropped;
      continue;
    }
    rep.bracket_p_max_abs = std::max(rep.bracket_p_max_abs, std::abs(bracket));
    if (!rep.applicable) continue;
    const double c1 = bracket / (a.a3() * (a.a2() + a.a3() * p));
    if (!std::isfinite(c1)) {
      ++rep.dropped;
      continue;
    }
    rep.c1_min = std::min(rep.c1_min, c1);
    rep.c1_max = std::max(rep.c1_max, c1);
  }
  for (double e : eta_probes) {
    if (spec.q().near_pole(e)) continue;
    ++rep.probes;
    const Jet Q1 = aux.q1(e, t);
    const Jet S = aux.s_eta(e, t);
    const double q = spec.q().value(e, t);
    const double bracket = Q1.dt() / Q1.value() + beta * (Q1.d1() * S.value() / Q1.value() + 0.5 * S.d1()) + c4;
    if (!std::isfinite(bracket)) {
      ++rep.dropped;
      continue;
    }
    rep.bracket_q_max_abs = std::max(rep.bracket_q_max_abs, std::abs(bracket));
    if (!rep.applicable) continue;
    const double c2 = -bracket / (a.a3() * (a.a1() + a.a3() * q));
    if (!std::isfinite(c2)) {
      ++rep.dropped;
      continue;
    }
    rep.c2_min = std::min(rep.c2_min, c2);
    rep.c2_max = std::max(rep.c2_max, c2);
  }
  if (rep.applicable && (rep.c1_min > rep.c1_max || rep.c2_min > rep.c2_max)) {
    rep.applicable = false;
    rep.reason = "not-applicable: no finite probe values";
    rep.c1_min = rep.c1_max = rep.c2_min = rep.c2_max = kNaN;
  } else if (!rep.applicable) {
    rep.c1_min = rep.c1_max = rep.c2_min = rep.c2_max = kNaN;
  }
  return rep;
}

std::pair<SampledPhase, SampledPhase> integrate_phases(const SeparatedSolution& aux,
                                                       std::pair<double, double> zeta_range,
                                                       std::pair<double, double> eta_range, double t, int n) {
  if (n < 2) throw UsageError("integrate_phases needs at least 2 points");
  auto run = [&](Side side, std::pair<double, double> range) {
    SampledPhase out;
    for (int i = 0; i < n; ++i) out.coords.push_back(grid_coordinate(range.first, range.second, i, n));
    for (const auto& j : aux.integrate_phase(side, out.coords, t)) out.values.push_back(j.value());
    return out;
  };
  return {run(Side::zeta, zeta_range), run(Side::eta, eta_range)};
}

}  // namespace dsvs
