#include "lambdafwm/medium.hpp"

#include <cmath>

namespace lambdafwm {

void MediumParams::validate(const std::string& prefix) const {
  auto require_finite = [&](double v, const char* name) {
    if (!std::isfinite(v)) {
      throw ConfigError(prefix + "." + name, "must be finite");
    }
  };
  require_finite(delta1, "delta1_tau");
  require_finite(delta2, "delta2_tau");
  require_finite(delta3, "delta3_tau");
  if (!std::isfinite(omega12.real()) || !std::isfinite(omega12.imag())) {
    throw ConfigError(prefix + ".omega12_tau", "must be finite");
  }
  if (!std::isfinite(omega13.real()) || !std::isfinite(omega13.imag())) {
    throw ConfigError(prefix + ".omega13_tau", "must be finite");
  }
  if (!(gamma1 >= 0.0)) throw ConfigError(prefix + ".gamma1_tau", "must be >= 0");
  if (!(gamma2 >= 0.0)) throw ConfigError(prefix + ".gamma2_tau", "must be >= 0");
  if (!(gamma3 >= 0.0)) throw ConfigError(prefix + ".gamma3_tau", "must be >= 0");
  if (!(kappa02 >= 0.0)) throw ConfigError(prefix + ".kappa02_c_tau2", "must be >= 0");
  if (!(kappa03 >= 0.0)) throw ConfigError(prefix + ".kappa03_c_tau2", "must be >= 0");
}

Complex ProbePulse::envelope(double t) const {
  if (shape == Shape::Gaussian) {
    return amplitude * std::exp(-t * t);
  }
  if (samples.size() < 2 || t < t0 || t > t0 + dt * static_cast<double>(samples.size() - 1)) {
    return {0.0, 0.0};
  }
  const double x = (t - t0) / dt;
  const auto j = static_cast<std::size_t>(x);
  if (j + 1 >= samples.size()) return amplitude * samples.back();
  const double f = x - static_cast<double>(j);
  return amplitude * (samples[j] * (1.0 - f) + samples[j + 1] * f);
}

void ProbePulse::validate(const std::string& prefix) const {
  if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag())) {
    throw ConfigError(prefix + ".amplitude", "must be finite");
  }
  if (shape == Shape::Tabulated) {
    if (samples.size() < 2) {
      throw ConfigError(prefix + ".samples", "need at least 2 samples");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw ConfigError(prefix + ".dt", "must be > 0");
    }
    if (!std::isfinite(t0)) throw ConfigError(prefix + ".t0", "must be finite");
    double energy = 0.0;
    for (const auto& s : samples) {
      if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        throw ConfigError(prefix + ".samples", "entries must be finite");
      }
      energy += std::norm(s) * dt;
    }
    if (!std::isfinite(energy)) {
      throw ConfigError(prefix + ".samples", "envelope energy must be finite");
    }
  }
}

bool weak_probe_ok(const MediumParams& params, const ProbePulse& pulse) {
  return std::abs(pulse.amplitude) * 10.0 <= std::abs(params.omega12);
}

}  // namespace lambdafwm
