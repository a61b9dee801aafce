#pragma once

#include "lambdafwm/grid.hpp"
#include "lambdafwm/response.hpp"

namespace lambdafwm {

/// 2x2 complex transfer matrix at one (eta, z): (w20, w30)(z) = T * (w20, w30)(0).
struct TransferMatrix {
  Complex t11, t12, t21, t22;
};

/// Forward transform of the probe envelope onto a frequency grid.
/// Gaussian pulses use the closed form w20(eta) = amplitude*(1/sqrt(2))*exp(-eta^2/4)
/// (symmetric 1/sqrt(2*pi) Fourier convention, forward kernel e^{+i*eta*t});
/// tabulated pulses use the discrete sum under the same convention.
/// w30 is identically zero. Throws GridTooCoarse if spacing > 0.5.
SpectralField probe_spectrum(const ProbePulse& pulse, const SpectralGrid& grid);

/// Transfer matrix built from a precomputed response. Evaluated through the
/// mode exponentials e^{i(d_bar +/- lambda_big)z} so complex trigonometric
/// arguments cannot overflow; throws GainOverflow if an exponent exceeds +700.
/// flip_branch negates the square-root branch of lambda_big; results must be
/// independent of it (the combinations used are even in lambda_big).
TransferMatrix transfer_from_response(const SpectralResponse& response, double z,
                                      bool flip_branch = false);

/// Transfer matrix at (eta, z). Throws SingularResponse via spectral_response.
TransferMatrix transfer_matrix(const MediumParams& params, double eta, double z);

/// Apply the transfer matrix pointwise over the grid. Nonzero w30 input is
/// supported. z = 0 returns the input unchanged.
SpectralField propagate(const MediumParams& params, const SpectralField& field0,
                        double z);

/// Inverse transform Omega(t) = (1/sqrt(2*pi)) * sum_j W(eta_j) e^{-i*eta_j*t} * d_eta
/// for both channels at the given times. z labels the returned trace.
/// Throws GridTooCoarse if spacing > 0.25, PhaseAliasing if the spectrum's
/// phase jumps by more than pi/4 between adjacent samples within |eta| <= 8
/// (where both samples carry weight above 1e-6 of the channel maximum).
EnvelopeTrace inverse_transform(const SpectralField& field,
                                const std::vector<double>& times, double z);

/// Photon-flux conversion efficiency from a time-domain trace:
/// eff(t) = (kappa02/kappa03) * |Omega30(z,t)|^2 / |amplitude|^2.
/// Throws ZeroProbe if the pulse amplitude is zero.
EfficiencyTrace efficiency_trace(const EnvelopeTrace& trace, const MediumParams& params,
                                 const ProbePulse& pulse);

/// Destructive-interference diagnostic: the largest realized |alpha3| on the
/// grid divided by the largest magnitude of the direct excitation pathway
/// |Omega31*Omega12*w20/Delta| alone. Values << 1 certify that the generated
/// field cancels the direct pathway into state |3>. Returns 0 for an all-zero
/// field; +inf if only the direct pathway vanishes.
double alpha3_quench(const MediumParams& params, const SpectralField& field);

/// Default time grid for a propagation distance z: 2001 samples spanning the
/// vacuum arrival minus 5*tau up to the slowest group delay plus 5*tau.
std::vector<double> default_time_grid(const MediumParams& params, double z,
                                      std::size_t n = 2001);

struct SpectralSolveOptions {
  SpectralGrid grid{};
  /// Grid doublings attempted when the inverse transform reports aliasing.
  int max_refinements = 6;
};

/// probe_spectrum + propagate + inverse_transform with automatic grid
/// refinement on PhaseAliasing (n_points doubles per retry).
EnvelopeTrace solve_spectral(const MediumParams& params, const ProbePulse& pulse,
                             double z, const std::vector<double>& times,
                             const SpectralSolveOptions& options = {});

}  // namespace lambdafwm
