#pragma once

#include <tuple>

#include "lambdafwm/medium.hpp"

namespace lambdafwm {

/// Guard threshold on |Delta| (dimensionless, units 1/tau^3) below which the
/// per-frequency response is treated as singular.
inline constexpr double kEpsSingular = 1e-12;

/// Per-frequency derived quantities of the four-level system at one eta.
/// k2/k3/s2/s3/lambda_big/d_bar are in units of 1/(c*tau); with z measured in
/// c*tau the vacuum term omega/c contributes eta to k2 and k3.
struct SpectralResponse {
  Complex d1, d2, d3;   ///< dressed detuning factors, units 1/tau
  Complex delta_det;    ///< system determinant Delta, units 1/tau^3
  Complex k2, k3;       ///< channel wavenumbers K2, K3 (vacuum term included)
  Complex s2, s3;       ///< cross couplings S2, S3
  Complex lambda_big;   ///< mode splitting: lambda_big^2 = ((k2-k3)/2)^2 + s2*s3
  Complex d_bar;        ///< mean wavenumber (k2+k3)/2
};

/// D1, D2, D3 at dimensionless frequency eta = omega*tau:
/// Di = deltai + eta + i*gammai/2.
std::tuple<Complex, Complex, Complex> detuning_factors(const MediumParams& params,
                                                       double eta);

/// Full per-frequency response. Throws SingularResponse if |Delta| <= kEpsSingular.
SpectralResponse spectral_response(const MediumParams& params, double eta);

/// Atomic amplitudes (alpha1, alpha2, alpha3) driven by spectral field
/// components w20, w30 at frequency eta. They solve the linear system
///   D1*a1 + Omega12*a2 + Omega13*a3 = 0
///   Omega21*a1 + D2*a2              = -w20
///   Omega31*a1 + D3*a3              = -w30
/// Throws SingularResponse if |Delta| <= kEpsSingular.
std::tuple<Complex, Complex, Complex> atomic_amplitudes(const MediumParams& params,
                                                        double eta, Complex w20,
                                                        Complex w30);

}  // namespace lambdafwm
