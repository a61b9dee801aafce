#include "lambdafwm/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lambdafwm/kernels.hpp"
#include "lambdafwm/limits.hpp"

namespace lambdafwm {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;  // 1/sqrt(2*pi)

// e^{i*q*z} with an overflow guard on the growing direction. Decay may
// underflow to zero harmlessly; growth past e^{700} means gain parameters.
Complex checked_mode_exp(Complex q, double z) {
  const double growth = -q.imag() * z;
  if (growth > 700.0) throw GainOverflow(growth);
  return std::exp(Complex{0.0, 1.0} * q * z);
}

}  // namespace

void SpectralGrid::validate(const std::string& prefix) const {
  if (!(eta_min < eta_max)) {
    throw ConfigError(prefix + ".eta_min", "requires eta_min < eta_max");
  }
  if (n_points < 16) throw ConfigError(prefix + ".n_points", "must be >= 16");
  if (!std::isfinite(eta_min) || !std::isfinite(eta_max)) {
    throw ConfigError(prefix + ".eta_min", "must be finite");
  }
}

SpectralField probe_spectrum(const ProbePulse& pulse, const SpectralGrid& grid) {
  grid.validate();
  pulse.validate();
  if (grid.spacing() > 0.5) {
    throw GridTooCoarse("frequency spacing " + std::to_string(grid.spacing()) +
                        " > 0.5 cannot resolve the pulse spectrum");
  }
  SpectralField field;
  field.grid = grid;
  field.w20.resize(grid.n_points);
  field.w30.assign(grid.n_points, Complex{0.0, 0.0});
  if (pulse.shape == ProbePulse::Shape::Gaussian) {
    // Closed form of the transform of exp(-t^2): (1/sqrt(2)) exp(-eta^2/4).
    const double c = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
      const double eta = grid.eta(j);
      field.w20[j] = pulse.amplitude * (c * std::exp(-0.25 * eta * eta));
    }
  } else {
    const double scale = pulse.dt * kInvSqrt2Pi;
    for (std::size_t j = 0; j < grid.n_points; ++j) {
      const double eta = grid.eta(j);
      const Complex s = kernels::weighted_phase_sum(pulse.samples.data(),
                                                    pulse.samples.size(),
                                                    eta * pulse.t0, eta * pulse.dt);
      field.w20[j] = pulse.amplitude * scale * s;
    }
  }
  return field;
}

TransferMatrix transfer_from_response(const SpectralResponse& response, double z,
                                      bool flip_branch) {
  const Complex lambda = flip_branch ? -response.lambda_big : response.lambda_big;
  const Complex e_plus = checked_mode_exp(response.d_bar + lambda, z);
  const Complex e_minus = checked_mode_exp(response.d_bar - lambda, z);

  const Complex even = 0.5 * (e_plus + e_minus);  // e^{i*d_bar*z} cos(lambda*z)
  // e^{i*d_bar*z} * i*z*sinc(lambda*z): the direct quotient loses accuracy for
  // small |lambda*z|, where two series terms suffice.
  Complex odd_over_lambda;
  const Complex lz = lambda * z;
  if (std::abs(lz) < 1e-3) {
    const Complex correction = 1.0 - lz * lz / 6.0;
    odd_over_lambda = checked_mode_exp(response.d_bar, z) * Complex{0.0, z} * correction;
  } else {
    odd_over_lambda = 0.5 * (e_plus - e_minus) / lambda;
  }

  const Complex half_split = 0.5 * (response.k2 - response.k3);
  TransferMatrix t;
  t.t11 = even + odd_over_lambda * half_split;
  t.t12 = odd_over_lambda * response.s2;
  t.t21 = odd_over_lambda * response.s3;
  t.t22 = even - odd_over_lambda * half_split;
  return t;
}

TransferMatrix transfer_matrix(const MediumParams& params, double eta, double z) {
  return transfer_from_response(spectral_response(params, eta), z);
}

SpectralField propagate(const MediumParams& params, const SpectralField& field0,
                        double z) {
  if (z == 0.0) return field0;
  SpectralField out;
  out.grid = field0.grid;
  out.w20.resize(field0.w20.size());
  out.w30.resize(field0.w30.size());
  for (std::size_t j = 0; j < field0.w20.size(); ++j) {
    const TransferMatrix t = transfer_matrix(params, field0.grid.eta(j), z);
    out.w20[j] = t.t11 * field0.w20[j] + t.t12 * field0.w30[j];
    out.w30[j] = t.t21 * field0.w20[j] + t.t22 * field0.w30[j];
  }
  return out;
}

namespace {

// Largest phase jump between adjacent weight-bearing samples within the pulse
// bandwidth. Samples below 1e-6 of the channel maximum carry no energy and a
// jump across them cannot alias anything visible.
void check_phase_aliasing(const SpectralField& field) {
  for (const auto* channel : {&field.w20, &field.w30}) {
    double peak = 0.0;
    for (const auto& v : *channel) peak = std::max(peak, std::abs(v));
    if (peak <= 0.0) continue;
    const double floor = 1e-6 * peak;
    for (std::size_t j = 0; j + 1 < channel->size(); ++j) {
      const double eta = field.grid.eta(j);
      if (std::abs(eta) > 8.0) continue;
      const Complex a = (*channel)[j];
      const Complex b = (*channel)[j + 1];
      if (std::abs(a) < floor || std::abs(b) < floor) continue;
      const double jump = std::abs(std::arg(b / a));
      if (jump > 0.25 * std::numbers::pi) {
        throw PhaseAliasing(eta, jump);
      }
    }
  }
}

}  // namespace

EnvelopeTrace inverse_transform(const SpectralField& field,
                                const std::vector<double>& times, double z) {
  const double d_eta = field.grid.spacing();
  if (d_eta > 0.25) {
    throw GridTooCoarse("frequency spacing " + std::to_string(d_eta) +
                        " > 0.25 cannot resolve the envelope");
  }
  check_phase_aliasing(field);

  EnvelopeTrace trace;
  trace.times = times;
  trace.z = z;
  trace.omega20.resize(times.size());
  trace.omega30.resize(times.size());
  const double scale = d_eta * kInvSqrt2Pi;
  const std::size_t n = field.grid.n_points;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const double theta0 = -field.grid.eta_min * t;
    const double dtheta = -d_eta * t;
    trace.omega20[k] = scale * kernels::weighted_phase_sum(field.w20.data(), n, theta0, dtheta);
    trace.omega30[k] = scale * kernels::weighted_phase_sum(field.w30.data(), n, theta0, dtheta);
  }
  return trace;
}

EfficiencyTrace efficiency_trace(const EnvelopeTrace& trace, const MediumParams& params,
                                 const ProbePulse& pulse) {
  const double amp2 = std::norm(pulse.amplitude);
  if (amp2 == 0.0) throw ZeroProbe();
  const double weight = params.kappa03 > 0.0 ? params.kappa02 / params.kappa03 : 0.0;
  EfficiencyTrace eff;
  eff.times = trace.times;
  eff.efficiency.resize(trace.times.size());
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    eff.efficiency[k] = weight * std::norm(trace.omega30[k]) / amp2;
    if (eff.efficiency[k] >= eff.peak) {
      eff.peak = eff.efficiency[k];
      eff.peak_time = trace.times[k];
    }
  }
  return eff;
}

double alpha3_quench(const MediumParams& params, const SpectralField& field) {
  double max_a3 = 0.0;
  double max_direct = 0.0;
  const Complex direct_coupling = params.omega31() * params.omega12;
  for (std::size_t j = 0; j < field.grid.n_points; ++j) {
    const auto [a1, a2, a3] =
        atomic_amplitudes(params, field.grid.eta(j), field.w20[j], field.w30[j]);
    (void)a1;
    (void)a2;
    max_a3 = std::max(max_a3, std::abs(a3));
    const auto [d1, d2, d3] = detuning_factors(params, field.grid.eta(j));
    const Complex delta_det =
        d1 * d2 * d3 - d3 * std::norm(params.omega12) - d2 * std::norm(params.omega13);
    max_direct = std::max(max_direct, std::abs(direct_coupling * field.w20[j] / delta_det));
  }
  if (max_direct == 0.0) {
    return max_a3 == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return max_a3 / max_direct;
}

std::vector<double> default_time_grid(const MediumParams& params, double z,
                                      std::size_t n) {
  double slowest = 1.0;
  try {
    slowest = std::max(slowest, vg1_inverse(params));
  } catch (const Error&) {
  }
  try {
    slowest = std::max(slowest, propagation_constants(params).inv_vg);
  } catch (const Error&) {
  }
  const double t_min = z - 5.0;
  const double t_max = z * slowest + 5.0;
  std::vector<double> times(n);
  const double dt = (t_max - t_min) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    times[k] = t_min + dt * static_cast<double>(k);
  }
  return times;
}

EnvelopeTrace solve_spectral(const MediumParams& params, const ProbePulse& pulse,
                             double z, const std::vector<double>& times,
                             const SpectralSolveOptions& options) {
  params.validate();
  SpectralGrid grid = options.grid;
  for (int attempt = 0;; ++attempt) {
    const SpectralField field0 = probe_spectrum(pulse, grid);
    const SpectralField fieldz = propagate(params, field0, z);
    try {
      return inverse_transform(fieldz, times, z);
    } catch (const PhaseAliasing&) {
      if (attempt >= options.max_refinements) throw;
      grid.n_points *= 2;
    }
  }
}

}  // namespace lambdafwm
