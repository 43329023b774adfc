#pragma once

#include <string>
#include <utility>

#include "dsvs/auxiliary.hpp"
#include "dsvs/hirota.hpp"
#include "dsvs/stencil.hpp"

namespace dsvs {

/// Reduction of one residual field over a window.
struct ResidualReport {
  std::string check_name;
  bool applicable = true;
  std::string note;

  int samples = 0;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  /// Residual over the summed magnitudes of the terms that cancel in it.
  double max_rel = 0.0;
  double mean_rel = 0.0;
  /// Residual over the check's natural scale (|g|^2 for the constraint
  /// line); zero when the check has none.
  double max_rel_natural = 0.0;
  /// Location of the largest relative residual, or of the largest absolute
  /// one for checks without a scale.
  CoordinatePoint worst_point;

  int masked = 0;  // profile poles and stencils touching them
  int singular = 0;
  int sign_violations = 0;
  int degenerate = 0;
  int unresolved = 0;  // the stencil cannot resolve the local phase oscillation

  /// One "key: value" line per field.
  std::string to_text() const;
};

struct BilinearReports {
  ResidualReport line1;
  ResidualReport line2;
  ConsistencyReport consistency;
};

struct VerifyOptions {
  int nx = 64;
  int ny = 64;
  /// Line 1 is skipped unless the c1, c2 variation stays below this.
  double consistency_threshold = 1e-8;
};

/// Consistency of the separation on the window's zeta and eta extents.
ConsistencyReport window_consistency(const SeparatedSolution& aux, const Window& window, double t, int n = 33);

/// Residuals of the bilinear system: line 2, 2 D_zeta D_eta f.f - g g*, is an
/// identity of the ansatz; line 1, the complex envelope equation, holds
/// only for consistent separations. Line 1 is reported divided by |f|^3,
/// which makes it the residual of the envelope equation for u = g / f.
BilinearReports bilinear_residuals(const SeparatedSolution& aux, const Window& window, double t,
                                   const VerifyOptions& options = {});

struct PdeOptions {
  int nx = 32;
  int ny = 32;
  /// Stencil accuracy for every difference below.
  int accuracy = 4;
  /// Step for u_t, u_zz, u_ee in the envelope equation.
  double h_envelope = kDefaultStepSecond;
  /// Step for the mixed difference of phi in the constraint equation.
  double h_constraint = kDefaultStepFourth;
  double consistency_threshold = 1e-8;
  /// Envelope samples whose phase turns by more than this per step in
  /// zeta, eta or t are counted as unresolved and skipped.
  double max_phase_step = 0.01;
};

struct PdeReports {
  ResidualReport line1;
  ResidualReport line2;
};

/// Residuals of the rotated system
///   i u_t + beta [(u_zz + u_ee)/2 - |u|^2 u/2 + u phi] - i gamma u = 0,
///   4 phi_ze - (d_zeta + d_eta)^2 U = 0,
/// with finite differences on the sampled u and phi fields.
PdeReports pde_residuals(const SeparatedSolution& aux, const Window& window, double t,
                         const PdeOptions& options = {});

struct ConvergenceReport {
  PdeReports coarse;
  PdeReports fine;
  double order_line1 = 0.0;
  double order_line2 = 0.0;
};

/// Runs pde_residuals at the configured steps and at half of them; the
/// observed orders are log2 of the max_abs ratios.
ConvergenceReport pde_convergence(const SeparatedSolution& aux, const Window& window, double t,
                                  const PdeOptions& options = {});

/// min |f|, sign-change cells and profile poles on the window grid. With
/// mask_poles false the points near poles are evaluated as well.
GridScan singularity_scan(const SolutionSpec& spec, const Window& window, double t, int nx, int ny,
                          bool mask_poles = true);

/// "key: value" lines for a scan.
std::string scan_to_text(const GridScan& scan);

}  // namespace dsvs
