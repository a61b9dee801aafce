#include "lambdafwm/response.hpp"

#include <cmath>

namespace lambdafwm {

std::tuple<Complex, Complex, Complex> detuning_factors(const MediumParams& params,
                                                       double eta) {
  const Complex d1{params.delta1 + eta, 0.5 * params.gamma1};
  const Complex d2{params.delta2 + eta, 0.5 * params.gamma2};
  const Complex d3{params.delta3 + eta, 0.5 * params.gamma3};
  return {d1, d2, d3};
}

SpectralResponse spectral_response(const MediumParams& params, double eta) {
  const auto [d1, d2, d3] = detuning_factors(params, eta);
  const double o12sq = std::norm(params.omega12);
  const double o13sq = std::norm(params.omega13);
  const Complex delta_det = d1 * d2 * d3 - d3 * o12sq - d2 * o13sq;
  if (std::abs(delta_det) <= kEpsSingular) {
    throw SingularResponse(eta, std::abs(delta_det));
  }
  SpectralResponse r;
  r.d1 = d1;
  r.d2 = d2;
  r.d3 = d3;
  r.delta_det = delta_det;
  // Vacuum term omega/c contributes eta with z in c*tau units.
  r.k2 = eta + params.kappa02 * (o13sq - d1 * d3) / delta_det;
  r.k3 = eta + params.kappa03 * (o12sq - d1 * d2) / delta_det;
  r.s2 = -params.kappa02 * params.omega21() * params.omega13 / delta_det;
  r.s3 = -params.kappa03 * params.omega31() * params.omega12 / delta_det;
  const Complex half_split = 0.5 * (r.k2 - r.k3);
  r.lambda_big = std::sqrt(half_split * half_split + r.s2 * r.s3);
  r.d_bar = 0.5 * (r.k2 + r.k3);
  return r;
}

std::tuple<Complex, Complex, Complex> atomic_amplitudes(const MediumParams& params,
                                                        double eta, Complex w20,
                                                        Complex w30) {
  const auto [d1, d2, d3] = detuning_factors(params, eta);
  const double o12sq = std::norm(params.omega12);
  const double o13sq = std::norm(params.omega13);
  const Complex delta_det = d1 * d2 * d3 - d3 * o12sq - d2 * o13sq;
  if (std::abs(delta_det) <= kEpsSingular) {
    throw SingularResponse(eta, std::abs(delta_det));
  }
  const Complex a1 = (d3 * params.omega12 * w20 + d2 * params.omega13 * w30) / delta_det;
  const Complex a2 =
      ((o13sq - d1 * d3) * w20 - params.omega21() * params.omega13 * w30) / delta_det;
  const Complex a3 =
      ((o12sq - d1 * d2) * w30 - params.omega31() * params.omega12 * w20) / delta_det;
  return {a1, a2, a3};
}

}  // namespace lambdafwm
