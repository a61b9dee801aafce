#pragma once

#include <optional>
#include <string>

#include "lambdafwm/grid.hpp"
#include "lambdafwm/medium.hpp"

#include <json.hpp>

namespace lambdafwm {

/// Time grid request: uniform samples of t/tau.
struct TimeGridSpec {
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 2001;
  bool automatic = true;  ///< derive from the medium and z when true
};

/// One complete run: medium, pulse, distance, grids, solver selection, output.
/// All quantities are dimensionless; JSON field names carry the unit suffix
/// (omega12_tau, kappa02_c_tau2, z_over_c_tau, ...).
struct RunConfig {
  MediumParams medium;
  ProbePulse pulse;
  double z = 0.0;
  bool z_auto = false;  ///< z chosen as the optimal distance pi/|P|
  TimeGridSpec time_grid;
  SpectralGrid spectral_grid;
  std::vector<std::string> solvers;  ///< subset of {"spectral","analytic","oracle"}
  double c_tau_cm = 1.0;             ///< report-only anchor converting z to cm
  std::string output_path = "out";
  std::string output_format = "csv";  ///< "csv" or "json"

  void validate() const;
};

/// Parameter sweep over one named parameter, rerunning `base` per value.
struct SweepSpec {
  enum class Parameter { Delta2, Delta3, RabiRatioSq };
  Parameter parameter = Parameter::Delta2;
  std::vector<double> values;
  RunConfig base;

  void validate() const;
};

/// Parse/serialize; parse errors throw ConfigError with the dotted field path.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& config);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

RunConfig load_run_config(const std::string& path);
SweepSpec load_sweep_spec(const std::string& path);

/// Apply one sweep value to a copy of the base config. RabiRatioSq sets
/// |omega13|^2 = value * |omega12|^2 keeping omega12 and the phase of omega13.
RunConfig apply_sweep_value(const SweepSpec& spec, double value);

std::string sweep_parameter_name(SweepSpec::Parameter parameter);

}  // namespace lambdafwm
