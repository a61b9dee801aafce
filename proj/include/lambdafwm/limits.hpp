#pragma once

#include "lambdafwm/grid.hpp"
#include "lambdafwm/response.hpp"

namespace lambdafwm {

/// Validity report for one limiting-case formula family.
struct LimitRegime {
  enum class Kind { OnResonance, DetunedStrong };
  Kind kind;
  std::vector<RegimeCondition> validity;

  bool satisfied() const {
    for (const auto& c : validity) {
      if (!c.satisfied) return false;
    }
    return true;
  }
};

/// All-zero detunings plus coupling fields strong against the dressed widths.
/// z >= 0 additionally requires the damped mode to have decayed below 1e-3.
LimitRegime check_on_resonance(const MediumParams& params, double z);

/// Large detunings that are still small against both Rabi frequencies.
LimitRegime check_detuned_strong(const MediumParams& params);

/// Derived propagation constants of the detuned limit. Units: inv_vg1 and
/// inv_vg in 1/c, p_factor and q_factor in 1/(c*tau).
struct PropagationConstants {
  double inv_vg1 = 1.0;
  double inv_vg = 1.0;
  double p_factor = 0.0;
  double q_factor = 0.0;
};

/// 1/V_g1 = 1 + kappa02*kappa03 / (kappa02*|omega13|^2 + kappa03*|omega12|^2),
/// in units of 1/c. Both couplings zero -> ZeroCoupling. Both kappas zero -> 1.
double vg1_inverse(const MediumParams& params);

/// Matched-velocity envelopes of the on-resonance limit at distance z:
///   Omega30(z,t) = C3 * e^{i*lambda_slow(0)*z} * Omega20(0, t - z/V_g1)
///   Omega20(z,t) = C2 * e^{i*lambda_slow(0)*z} * Omega20(0, t - z/V_g1)
/// with C3 = kappa03*Omega31*Omega12/Sigma, C2 = kappa03*|omega12|^2/Sigma,
/// Sigma = kappa02*|omega13|^2 + kappa03*|omega12|^2. lambda_slow(0) is the
/// exact surviving-mode wavenumber at eta=0; it reduces to 0 when gamma1=0,
/// and otherwise carries the residual attenuation of the surviving mode.
/// Throws RegimeViolation if check_on_resonance fails.
EnvelopeTrace on_resonance_fields(const MediumParams& params, const ProbePulse& pulse,
                                  double z, const std::vector<double>& times);

/// P, 1/V_g, Q and 1/V_g1 of the detuned limit.
/// Throws DegenerateDetuning if |omega12|^2*delta3 + |omega13|^2*delta2 = 0,
/// ZeroCoupling if omega12 = 0.
PropagationConstants propagation_constants(const MediumParams& params);

/// Two-velocity envelopes of the detuned limit at distance z:
///   Omega30 = C3 * (G(t - z/V_g1) - e^{iPz - Qz} G(t - z/V_g))
///   Omega20 = C2 * (G(t - z/V_g1) + r * e^{iPz - Qz} G(t - z/V_g))
/// with G the input envelope and r = kappa02*|omega13|^2/(kappa03*|omega12|^2).
/// Throws RegimeViolation if check_detuned_strong fails.
EnvelopeTrace detuned_fields(const MediumParams& params, const ProbePulse& pulse,
                             double z, const std::vector<double>& times);

struct EfficiencyOptions {
  /// Delay the first (fast) term by z/V_g1 instead of z/c. Diagnostic only;
  /// the closed form uses z/c and the two coincide when c/V_g1 ~ 1.
  bool first_term_vg1 = false;
};

/// Closed-form conversion efficiency. In the detuned regime:
///   F(t) = pref * |e^{-(t-z/c)^2} - e^{iPz - Qz} e^{-(t-z/V_g)^2}|^2,
///   pref = kappa03|omega12|^2 kappa02|omega13|^2 / Sigma^2.
/// On resonance the second term is absent: F(t) = pref * e^{-2(t-z/V_g1)^2}.
/// Throws RegimeViolation when neither regime applies.
EfficiencyTrace efficiency_analytic(const MediumParams& params, double z,
                                    const std::vector<double>& times,
                                    const EfficiencyOptions& options = {});

/// Distance of first constructive recombination, pi/|P| in c*tau units.
double optimal_distance(const MediumParams& params);

/// Relative error |LHS - RHS| / |LHS| between the exact surviving-mode
/// wavenumber (the 2x2 eigenvalue closest to eta) and its weak-dispersion
/// approximation eta + D1*kappa02*kappa03/Sigma. Returns 0 when both vanish.
double dispersion_approx_error(const MediumParams& params, double eta);

}  // namespace lambdafwm
