#pragma once

#include "lambdafwm/grid.hpp"
#include "lambdafwm/response.hpp"

namespace lambdafwm {

/// Discretization of the retarded-frame march: s = t - z/c in units of tau,
/// z in units of c*tau.
struct SpaceTimeGrid {
  std::size_t z_steps = 64;
  double s_min = -6.0;
  double s_max = 6.0;
  std::size_t s_steps = 512;  ///< number of intervals; nodes = s_steps + 1

  double ds() const { return (s_max - s_min) / static_cast<double>(s_steps); }
  void validate(const std::string& prefix = "spacetime_grid") const;
};

struct OracleOptions {
  /// Re-run at half resolution and throw NotConverged if the relative L2
  /// difference between the two solutions exceeds richardson_tol.
  bool richardson_check = false;
  double richardson_tol = 1e-3;
};

/// Stability/accuracy-derived grid for a target distance z: s covers the pulse
/// support plus the slowest group delay; ds resolves the fastest Rabi
/// oscillation (<= 0.1/max|Omega|); dz satisfies both the explicit-march
/// stability bound over the full discrete frequency band (1.5/max|lambda-eta|)
/// and a phase-accuracy bound on the surviving modes (0.02/max slow deviation).
SpaceTimeGrid suggest_grid(const MediumParams& params, double z);

/// Direct integration of the amplitude and field equations in the retarded
/// frame: per z-slice the three atomic amplitudes are integrated over s with
/// a classical 4th-order one-step method driven by the current fields
/// (atoms start in the ground state at s_min), then both fields advance in z
/// with a two-stage predictor-corrector using d(Omega20)/dz = i*kappa02*A2,
/// d(Omega30)/dz = i*kappa03*A3. Returns the envelopes at the target z with
/// times converted back to t = s + z.
/// Throws StepTooLarge if amplitude norms exceed 1.1 or go non-finite;
/// NotConverged per OracleOptions.
EnvelopeTrace oracle_solve(const MediumParams& params, const ProbePulse& pulse,
                           double z, const SpaceTimeGrid& grid,
                           const OracleOptions& options = {});

/// Channel-by-channel deviation between two envelope traces sampled on the
/// first trace's time grid (the second is linearly interpolated onto it).
struct SolverComparison {
  double max_abs_20 = 0.0;
  double max_abs_30 = 0.0;
  double rel_l2_20 = 0.0;  ///< L2 of the difference over L2 of the first trace
  double rel_l2_30 = 0.0;
};

SolverComparison compare_traces(const EnvelopeTrace& a, const EnvelopeTrace& b);

/// Run the spectral solver and this oracle on auto-selected grids and report
/// their agreement.
SolverComparison compare_solvers(const MediumParams& params, const ProbePulse& pulse,
                                 double z);

}  // namespace lambdafwm
