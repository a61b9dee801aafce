#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lambdafwm {

/// Base class for all solver and configuration failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// |Delta(eta)| fell below the singularity guard: the linear response has a
/// pole on the integration path. Add damping (gamma2, gamma3 > 0) or detune.
class SingularResponse : public Error {
 public:
  SingularResponse(double eta, double abs_delta)
      : Error("singular response at eta=" + std::to_string(eta) +
              " (|Delta|=" + std::to_string(abs_delta) + ")"),
        eta(eta),
        abs_delta(abs_delta) {}
  double eta;
  double abs_delta;
};

/// Frequency grid spacing too large to resolve the pulse spectrum.
class GridTooCoarse : public Error {
 public:
  explicit GridTooCoarse(const std::string& what) : Error(what) {}
};

/// Phase of a propagated spectrum jumps by more than pi/4 between adjacent
/// grid samples inside the pulse bandwidth; the inverse transform would alias.
class PhaseAliasing : public Error {
 public:
  PhaseAliasing(double eta, double jump)
      : Error("phase aliasing at eta=" + std::to_string(eta) +
              " (adjacent-sample jump " + std::to_string(jump) + " rad)"),
        eta(eta),
        jump(jump) {}
  double eta;
  double jump;
};

/// A mode exponential would overflow: the parameters describe net gain,
/// outside the validity of the model.
class GainOverflow : public Error {
 public:
  explicit GainOverflow(double exponent)
      : Error("mode exponent " + std::to_string(exponent) +
              " would overflow (gain parameters)"),
        exponent(exponent) {}
  double exponent;
};

/// Probe amplitude is zero where a nonzero probe is required.
class ZeroProbe : public Error {
 public:
  ZeroProbe() : Error("probe amplitude is zero") {}
};

/// Both coupling Rabi frequencies are zero.
class ZeroCoupling : public Error {
 public:
  ZeroCoupling() : Error("both coupling fields are zero") {}
};

/// One named validity condition of a limiting-case formula.
struct RegimeCondition {
  std::string name;
  bool satisfied = false;
  /// Ratio by which the condition is met; >= 1 means satisfied.
  double margin = 0.0;
};

/// A limiting-case formula was invoked outside its validity regime.
class RegimeViolation : public Error {
 public:
  explicit RegimeViolation(std::vector<RegimeCondition> conditions)
      : Error(describe(conditions)), conditions(std::move(conditions)) {}
  std::vector<RegimeCondition> conditions;

 private:
  static std::string describe(const std::vector<RegimeCondition>& conds) {
    std::string s = "regime violation:";
    for (const auto& c : conds) {
      if (!c.satisfied) {
        s += " " + c.name + " (margin " + std::to_string(c.margin) + ")";
      }
    }
    return s;
  }
};

/// The detuning combination that sets the beat wavenumber is zero.
class DegenerateDetuning : public Error {
 public:
  DegenerateDetuning()
      : Error("degenerate detunings: |omega12|^2*delta3 + |omega13|^2*delta2 = 0") {}
};

/// Time-domain march became unstable (amplitude norms grew or went NaN).
class StepTooLarge : public Error {
 public:
  explicit StepTooLarge(const std::string& what) : Error(what) {}
};

/// Self-reported discretization error check failed.
class NotConverged : public Error {
 public:
  NotConverged(double estimate, double tolerance)
      : Error("half-grid error estimate " + std::to_string(estimate) +
              " exceeds tolerance " + std::to_string(tolerance)),
        estimate(estimate),
        tolerance(tolerance) {}
  double estimate;
  double tolerance;
};

/// Invalid configuration value; `field` is the dotted path of the offender.
class ConfigError : public Error {
 public:
  ConfigError(std::string field_path, const std::string& what)
      : Error(field_path + ": " + what), field(std::move(field_path)) {}
  std::string field;
};

}  // namespace lambdafwm
