#include "lambdafwm/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lambdafwm {

namespace {

double sigma_coupling(const MediumParams& p) {
  return p.kappa02 * std::norm(p.omega13) + p.kappa03 * std::norm(p.omega12);
}

RegimeCondition ratio_condition(std::string name, double value, double bound) {
  // Satisfied when value >= bound; margin is the headroom ratio.
  RegimeCondition c;
  c.name = std::move(name);
  c.margin = bound > 0.0 ? value / bound : std::numeric_limits<double>::infinity();
  c.satisfied = value >= bound;
  return c;
}

// Eigenvalues of the per-eta 2x2 system, ordered (slow, fast): the slow one
// is the eigenvalue closest to the vacuum wavenumber eta.
std::pair<Complex, Complex> mode_wavenumbers(const SpectralResponse& r, double eta) {
  const Complex a = r.d_bar + r.lambda_big;
  const Complex b = r.d_bar - r.lambda_big;
  if (std::abs(a - eta) <= std::abs(b - eta)) return {a, b};
  return {b, a};
}

}  // namespace

LimitRegime check_on_resonance(const MediumParams& params, double z) {
  LimitRegime regime;
  regime.kind = LimitRegime::Kind::OnResonance;

  auto zero_detuning = [](std::string name, double delta) {
    RegimeCondition c;
    c.name = std::move(name);
    c.satisfied = delta == 0.0;
    c.margin = c.satisfied ? std::numeric_limits<double>::infinity() : 0.0;
    return c;
  };
  regime.validity.push_back(zero_detuning("delta1_zero", params.delta1));
  regime.validity.push_back(zero_detuning("delta2_zero", params.delta2));
  regime.validity.push_back(zero_detuning("delta3_zero", params.delta3));

  // Coupling fields must dominate the dressed widths for the transparency
  // window to exist ('much greater' taken as a factor of 10).
  const auto [d1, d2, d3] = detuning_factors(params, 0.0);
  regime.validity.push_back(ratio_condition("omega12_sq_over_d1d2",
                                            std::norm(params.omega12),
                                            10.0 * std::abs(d1 * d2)));
  regime.validity.push_back(ratio_condition("omega13_sq_over_d1d3",
                                            std::norm(params.omega13),
                                            10.0 * std::abs(d1 * d3)));

  // The damped mode must have died out by z.
  RegimeCondition damped;
  damped.name = "damped_mode_negligible";
  try {
    const SpectralResponse r = spectral_response(params, 0.0);
    const auto [slow, fast] = mode_wavenumbers(r, 0.0);
    (void)slow;
    const double attenuation = std::exp(-fast.imag() * z);
    damped.satisfied = attenuation < 1e-3;
    damped.margin = attenuation > 0.0 ? 1e-3 / attenuation : std::numeric_limits<double>::infinity();
  } catch (const SingularResponse&) {
    damped.satisfied = false;
    damped.margin = 0.0;
  }
  regime.validity.push_back(damped);
  return regime;
}

LimitRegime check_detuned_strong(const MediumParams& params) {
  LimitRegime regime;
  regime.kind = LimitRegime::Kind::DetunedStrong;
  regime.validity.push_back(
      ratio_condition("abs_delta3_large", std::abs(params.delta3), 10.0));

  auto below_unity = [](std::string name, double num, double den) {
    RegimeCondition c;
    c.name = std::move(name);
    if (den <= 0.0) {
      c.satisfied = false;
      c.margin = 0.0;
      return c;
    }
    const double ratio = (num * num) / den;
    c.satisfied = ratio <= 1.0;
    c.margin = ratio > 0.0 ? 1.0 / ratio : std::numeric_limits<double>::infinity();
    return c;
  };
  const double o12sq = std::norm(params.omega12);
  const double o13sq = std::norm(params.omega13);
  regime.validity.push_back(below_unity("delta2_sq_below_omega12_sq", params.delta2, o12sq));
  regime.validity.push_back(below_unity("delta3_sq_below_omega12_sq", params.delta3, o12sq));
  regime.validity.push_back(below_unity("delta2_sq_below_omega13_sq", params.delta2, o13sq));
  regime.validity.push_back(below_unity("delta3_sq_below_omega13_sq", params.delta3, o13sq));
  return regime;
}

double vg1_inverse(const MediumParams& params) {
  if (std::norm(params.omega12) + std::norm(params.omega13) <= 0.0) {
    throw ZeroCoupling();
  }
  const double sigma = sigma_coupling(params);
  if (sigma == 0.0) return 1.0;  // both kappas zero: vacuum
  return 1.0 + params.kappa02 * params.kappa03 / sigma;
}

EnvelopeTrace on_resonance_fields(const MediumParams& params, const ProbePulse& pulse,
                                  double z, const std::vector<double>& times) {
  const LimitRegime regime = check_on_resonance(params, z);
  if (!regime.satisfied()) throw RegimeViolation(regime.validity);

  const double sigma = sigma_coupling(params);
  const Complex c3 = params.kappa03 * params.omega31() * params.omega12 / sigma;
  const Complex c2 = params.kappa03 * std::norm(params.omega12) / sigma;

  // Residual phase/attenuation of the surviving mode; exactly 1 when gamma1=0.
  const SpectralResponse r = spectral_response(params, 0.0);
  const auto [slow, fast] = mode_wavenumbers(r, 0.0);
  (void)fast;
  const Complex survive = std::exp(Complex{0.0, 1.0} * slow * z);

  const double delay = z * vg1_inverse(params);
  EnvelopeTrace trace;
  trace.times = times;
  trace.z = z;
  trace.omega20.resize(times.size());
  trace.omega30.resize(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Complex g = pulse.envelope(times[k] - delay);
    trace.omega20[k] = c2 * survive * g;
    trace.omega30[k] = c3 * survive * g;
  }
  return trace;
}

PropagationConstants propagation_constants(const MediumParams& params) {
  if (std::abs(params.omega12) == 0.0) throw ZeroCoupling();
  const double o12sq = std::norm(params.omega12);
  const double o13sq = std::norm(params.omega13);
  const double denom = o12sq * params.delta3 + o13sq * params.delta2;
  if (denom == 0.0) throw DegenerateDetuning();

  PropagationConstants pc;
  pc.inv_vg1 = vg1_inverse(params);
  pc.p_factor = sigma_coupling(params) / denom;
  const double ratio_sq = o13sq / o12sq;
  const double vg_denom = params.delta3 + ratio_sq * params.delta2;
  pc.inv_vg = 1.0 + (1.0 + ratio_sq) * (params.kappa02 * ratio_sq + params.kappa03) /
                        (vg_denom * vg_denom);
  pc.q_factor =
      pc.p_factor * (o12sq * 0.5 * params.gamma3 + o13sq * 0.5 * params.gamma2) / denom;
  return pc;
}

EnvelopeTrace detuned_fields(const MediumParams& params, const ProbePulse& pulse,
                             double z, const std::vector<double>& times) {
  const LimitRegime regime = check_detuned_strong(params);
  if (!regime.satisfied()) throw RegimeViolation(regime.validity);

  const PropagationConstants pc = propagation_constants(params);
  const double sigma = sigma_coupling(params);
  const Complex c3 = params.kappa03 * params.omega31() * params.omega12 / sigma;
  const Complex c2 = params.kappa03 * std::norm(params.omega12) / sigma;
  const double r = params.kappa02 * std::norm(params.omega13) /
                   (params.kappa03 * std::norm(params.omega12));
  const Complex beat =
      std::exp(Complex{-pc.q_factor * z, pc.p_factor * z});  // e^{iPz - Qz}

  const double delay1 = z * pc.inv_vg1;
  const double delay2 = z * pc.inv_vg;
  EnvelopeTrace trace;
  trace.times = times;
  trace.z = z;
  trace.omega20.resize(times.size());
  trace.omega30.resize(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Complex g1 = pulse.envelope(times[k] - delay1);
    const Complex g2 = pulse.envelope(times[k] - delay2);
    trace.omega30[k] = c3 * (g1 - beat * g2);
    trace.omega20[k] = c2 * (g1 + r * beat * g2);
  }
  return trace;
}

EfficiencyTrace efficiency_analytic(const MediumParams& params, double z,
                                    const std::vector<double>& times,
                                    const EfficiencyOptions& options) {
  const double sigma = sigma_coupling(params);
  const double pref =
      params.kappa03 * std::norm(params.omega12) * params.kappa02 *
      std::norm(params.omega13) / (sigma * sigma);

  EfficiencyTrace eff;
  eff.times = times;
  eff.efficiency.resize(times.size());

  const LimitRegime detuned = check_detuned_strong(params);
  if (detuned.satisfied()) {
    const PropagationConstants pc = propagation_constants(params);
    const Complex beat = std::exp(Complex{-pc.q_factor * z, pc.p_factor * z});
    const double delay1 = z * (options.first_term_vg1 ? pc.inv_vg1 : 1.0);
    const double delay2 = z * pc.inv_vg;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double u1 = times[k] - delay1;
      const double u2 = times[k] - delay2;
      const Complex v = std::exp(Complex{-u1 * u1, 0.0}) - beat * std::exp(Complex{-u2 * u2, 0.0});
      eff.efficiency[k] = pref * std::norm(v);
      if (eff.efficiency[k] >= eff.peak) {
        eff.peak = eff.efficiency[k];
        eff.peak_time = times[k];
      }
    }
    return eff;
  }

  const LimitRegime onres = check_on_resonance(params, z);
  if (onres.satisfied()) {
    const double delay = z * vg1_inverse(params);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double u = times[k] - delay;
      eff.efficiency[k] = pref * std::exp(-2.0 * u * u);
      if (eff.efficiency[k] >= eff.peak) {
        eff.peak = eff.efficiency[k];
        eff.peak_time = times[k];
      }
    }
    return eff;
  }

  std::vector<RegimeCondition> all = detuned.validity;
  all.insert(all.end(), onres.validity.begin(), onres.validity.end());
  throw RegimeViolation(all);
}

double optimal_distance(const MediumParams& params) {
  const PropagationConstants pc = propagation_constants(params);
  return std::numbers::pi / std::abs(pc.p_factor);
}

double dispersion_approx_error(const MediumParams& params, double eta) {
  const SpectralResponse r = spectral_response(params, eta);
  const auto [slow, fast] = mode_wavenumbers(r, eta);
  (void)fast;
  const double sigma = sigma_coupling(params);
  const Complex rhs = sigma > 0.0 ? Complex{eta, 0.0} + r.d1 * params.kappa02 * params.kappa03 / sigma
                                  : Complex{eta, 0.0};
  const double abs_lhs = std::abs(slow);
  if (abs_lhs == 0.0) {
    return std::abs(rhs) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::abs(slow - rhs) / abs_lhs;
}

}  // namespace lambdafwm
