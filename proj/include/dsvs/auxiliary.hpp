#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsvs/ansatz.hpp"

namespace dsvs {

/// Choices that the separated equations leave to the caller, plus
/// corruption knobs used by negative-control tests.
struct AuxiliaryOptions {
  TimeFunction c1{0.0};
  TimeFunction c2{0.0};
  double zeta_anchor = 0.0;  // r(zeta_anchor, t) = 0
  double eta_anchor = 0.0;  // s(eta_anchor, t) = 0
  double quadrature_step = 1e-3;

  std::optional<double> p0_override;
  std::optional<double> q0_override;
  double r_zeta_offset = 0.0;
  double s_eta_offset = 0.0;
};

struct AmplitudeJets {
  Jet p1;  // in (zeta, t)
  Jet q1;  // in (eta, t)
  bool radicand_violation = false;
};

/// p1 = d1 sqrt(c0 p_zeta), q1 = 2 d2 sqrt(det q_eta / c0). The sign of c0
/// follows p_zeta (resp. det q_eta) so both radicands stay non-negative
/// whenever det p_zeta q_eta >= 0.
AmplitudeJets derive_amplitudes(const SolutionSpec& spec, const CoordinatePoint& pt);

struct PhaseGradientJets {
  Jet r_zeta;  // in (zeta, t)
  Jet s_eta;  // in (eta, t)
};

/// Phase gradients solved from the p_t and q_t evolution relations with the
/// caller's c1, c2 (default zero).
PhaseGradientJets derive_phase_gradients(const SolutionSpec& spec, const CoordinatePoint& pt,
                                         const AuxiliaryOptions& options = {});

enum class Side { zeta, eta };

struct Background {
  double p0 = 0.0;
  double q0 = 0.0;
  bool singular = false;  // p1 or q1 vanished
};

/// Resolved auxiliary functions of one solution: amplitudes, phase
/// gradients, integrated phases and background potentials.
class SeparatedSolution {
 public:
  explicit SeparatedSolution(SolutionSpec spec, AuxiliaryOptions options = {});

  const SolutionSpec& spec() const { return spec_; }
  const AuxiliaryOptions& options() const { return options_; }

  Jet p1(double zeta, double t) const;
  Jet q1(double eta, double t) const;
  Jet r_zeta(double zeta, double t) const;
  Jet s_eta(double eta, double t) const;
  Jet gradient(Side side, double coord, double t) const {
    return side == Side::zeta ? r_zeta(coord, t) : s_eta(coord, t);
  }

  /// For each coordinate c, the integral from the anchor to c of the
  /// t-slice of the phase gradient: the (value, d/dt, d2/dt2 / 2) jet of the
  /// phase at (c, t). Paths never cross a profile pole: coordinates beyond a
  /// pole are anchored just past it. Throws QuadratureError on a non-finite
  /// gradient.
  std::vector<Taylor<1, 2>> integrate_phase(Side side, std::span<const double> coords, double t) const;

  /// Full order-2 phase jets r(zeta, t), s(eta, t) from a pre-integrated slice.
  Jet phase_jet(Side side, double coord, double t, const Taylor<1, 2>& integrated) const;
  /// Pointwise phase jet (runs the quadrature).
  Jet phase(Side side, double coord, double t) const;

  /// p0, q0 given the phase jets at the point.
  Background background(double zeta, double eta, double t, const Jet& r, const Jet& s) const;

 private:
  double anchor_for(Side side, double coord) const;

  SolutionSpec spec_;
  AuxiliaryOptions options_;
};

/// Integrated phase slices for a set of coordinates at one t, looked up by
/// the exact coordinate value.
class PhaseTable {
 public:
  PhaseTable(const SeparatedSolution& aux, Side side, std::vector<double> coords, double t);
  /// Throws std::out_of_range for a coordinate that was not tabulated.
  const Taylor<1, 2>& at(double coord) const;

 private:
  std::map<double, Taylor<1, 2>> table_;
};

/// p0 and q0 at a point (runs the phase quadrature).
Background derive_background(const SeparatedSolution& aux, const CoordinatePoint& pt);

struct ConsistencyReport {
  bool applicable = true;
  std::string reason;
  double t = 0.0;
  double c1_min = 0.0, c1_max = 0.0;
  double c2_min = 0.0, c2_max = 0.0;
  double bracket_p_max_abs = 0.0;  // |p-side bracket|, meaningful when a3 = 0
  double bracket_q_max_abs = 0.0;
  int probes = 0;
  int dropped = 0;

  double c1_variation() const { return c1_max - c1_min; }
  double c2_variation() const { return c2_max - c2_min; }
  double variation() const;
};

/// Evaluates the c1 (over zeta probes) and c2 (over eta probes) right-hand
/// sides at fixed t. Zero variation certifies that both are functions of t
/// alone. Not applicable when a3 = 0.
ConsistencyReport consistency_c1_c2(const SeparatedSolution& aux, std::span<const double> zeta_probes,
                                    std::span<const double> eta_probes, double t);

struct SampledPhase {
  std::vector<double> coords;
  std::vector<double> values;
};

/// r on n points of zeta_range and s on n points of eta_range.
std::pair<SampledPhase, SampledPhase> integrate_phases(const SeparatedSolution& aux,
                                                       std::pair<double, double> zeta_range,
                                                       std::pair<double, double> eta_range, double t, int n);

}  // namespace dsvs
