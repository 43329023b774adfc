#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "dsvs/solution.hpp"

namespace dsvs {

/// Order-2 jet in (zeta, eta, t).
using SpaceTimeJet = Taylor<3, 2>;

namespace axes {
inline constexpr SpaceTimeJet::Index zeta{1, 0, 0};
inline constexpr SpaceTimeJet::Index eta{0, 1, 0};
inline constexpr SpaceTimeJet::Index t{0, 0, 1};
inline constexpr SpaceTimeJet::Index zeta_zeta{2, 0, 0};
inline constexpr SpaceTimeJet::Index eta_eta{0, 2, 0};
inline constexpr SpaceTimeJet::Index zeta_eta{1, 1, 0};
inline constexpr SpaceTimeJet::Index zeta_t{1, 0, 1};
inline constexpr SpaceTimeJet::Index eta_t{0, 1, 1};
inline constexpr SpaceTimeJet::Index t_t{0, 0, 2};
}  // namespace axes

/// f = a0 + a1 p + a2 q + a3 p q with all (zeta, eta, t) partials to order 2.
SpaceTimeJet eval_f(const SolutionSpec& spec, const CoordinatePoint& pt);

/// Threshold below which |p_s| (relative to 1 + |p|) or |det| (relative to
/// |a0 a3| + |a1 a2|) counts as zero when classifying degenerate windows.
inline constexpr double kDegeneracyTolerance = 1e-9;

struct IntensitySample {
  double value = 0.0;
  bool singular = false;  // |f| below the division guard; value is NaN
  bool sign_violating = false;  // det p_zeta q_eta < 0; value kept for diagnostics
};

/// U = 4 det p_zeta q_eta / f^2.
IntensitySample eval_U(const SolutionSpec& spec, const CoordinatePoint& pt);

struct EnvelopeSample {
  std::complex<double> value;
  bool singular = false;
  bool sign_violating = false;  // value is NaN
};

/// u = 2 d1 d2 sqrt(det p_zeta q_eta) exp(i r + i s) / f for phases r, s.
EnvelopeSample eval_u(const SolutionSpec& spec, const CoordinatePoint& pt, double phase_r, double phase_s);

struct PhiSample {
  double value = 0.0;
  bool singular = false;
};

/// phi = -(f_zeta + f_eta)^2 / f^2 + (f_zz + 2 f_ze + f_ee) / f + p0 + q0.
PhiSample eval_phi(const SolutionSpec& spec, const CoordinatePoint& pt, double p0, double q0);

/// phi = 2 (log f)_xx + p0 + q0, computed by differentiating log|f| as a jet.
PhiSample eval_phi_log_form(const SolutionSpec& spec, const CoordinatePoint& pt, double p0, double q0);

/// Point evaluations on a window grid, shared by admissibility and
/// singularity diagnostics.
struct GridScan {
  struct Witness {
    CoordinatePoint point;
    double value = 0.0;
  };
  struct Cell {
    int ix = 0;
    int iy = 0;
  };

  int nx = 0;
  int ny = 0;
  int samples = 0;  // points inside the window
  int pole_points = 0;  // within a profile pole margin; skipped when masking
  int singular_points = 0;
  int sign_violations = 0;
  int degenerate_points = 0;  // U vanishes for structural reasons
  bool det_zero = false;
  double min_abs_f = 0.0;
  Witness min_f_point;
  std::vector<Cell> sign_change_cells;  // f changes sign across the cell
  Witness first_sign_violation;
  Witness first_singular;
};

GridScan scan_grid(const SolutionSpec& spec, const Window& window, double t, int nx, int ny,
                   bool mask_poles = true);

enum class AdmissibilityVerdict { admissible, degenerate, sign_violating, singular };
std::string_view verdict_name(AdmissibilityVerdict v);

struct AdmissibilityReport {
  AdmissibilityVerdict verdict = AdmissibilityVerdict::admissible;
  GridScan scan;
  std::string diagnostic;
};

/// Classifies a window at time t: degenerate (U = 0 everywhere), singular
/// (f vanishes or changes sign), sign-violating (det p_zeta q_eta < 0
/// somewhere) or admissible. Needs at least 2 samples per axis.
AdmissibilityReport check_admissibility(const SolutionSpec& spec, const Window& window, double t, int nx,
                                        int ny);

}  // namespace dsvs
