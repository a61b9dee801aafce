#pragma once

#include <complex>
#include <vector>

#include "lambdafwm/errors.hpp"

namespace lambdafwm {

using Complex = std::complex<double>;

/// Dimensionless constants of the medium and the two coupling lasers.
/// Times are in units of the probe width tau, lengths in units of c*tau,
/// frequencies in 1/tau. Stored values: omega12 = Omega12*tau,
/// kappa02 = kappa02*c*tau^2, and so on.
struct MediumParams {
  Complex omega12{0.0, 0.0};  ///< half-Rabi frequency |2>-|1> coupling, Omega12*tau
  Complex omega13{0.0, 0.0};  ///< half-Rabi frequency |1>-|3> coupling, Omega13*tau
  double delta1 = 0.0;        ///< detuning delta1*tau
  double delta2 = 0.0;        ///< detuning delta2*tau
  double delta3 = 0.0;        ///< detuning delta3*tau
  double gamma1 = 0.0;        ///< decay width gamma1*tau, >= 0
  double gamma2 = 0.0;        ///< decay width gamma2*tau, >= 0
  double gamma3 = 0.0;        ///< decay width gamma3*tau, >= 0
  double kappa02 = 0.0;       ///< propagation coupling kappa02*c*tau^2, >= 0
  double kappa03 = 0.0;       ///< propagation coupling kappa03*c*tau^2, >= 0

  /// Reverse-order couplings; the conjugate-pair convention is fixed here.
  Complex omega21() const { return std::conj(omega12); }
  Complex omega31() const { return std::conj(omega13); }

  /// Throws ConfigError naming the offending field if any invariant fails.
  void validate(const std::string& prefix = "medium") const;
};

/// Input probe envelope at z=0. The Gaussian shape is exp(-(t/tau)^2);
/// tabulated shapes are complex samples on a uniform t/tau grid, linearly
/// interpolated and zero outside their range. In both cases the physical
/// envelope is amplitude * shape(t).
struct ProbePulse {
  enum class Shape { Gaussian, Tabulated };

  Complex amplitude{1.0, 0.0};  ///< Omega20(0,0)*tau
  Shape shape = Shape::Gaussian;

  // Tabulated shape only.
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<Complex> samples;

  /// Envelope value Omega20(0,t)*tau at time t (t in units of tau).
  Complex envelope(double t) const;

  void validate(const std::string& prefix = "pulse") const;
};

/// True when the probe is weak against the coupling field (|amp| <= |Omega12|/10).
/// Advisory only: callers warn, they do not fail.
bool weak_probe_ok(const MediumParams& params, const ProbePulse& pulse);

}  // namespace lambdafwm
