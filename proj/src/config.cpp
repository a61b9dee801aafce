#include "lambdafwm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lambdafwm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path, what);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "must be an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "must be a number");
  return j.get<double>();
}

double number_field(const json& j, const char* key, const std::string& path) {
  return number(require(j, key, path), path + "." + key);
}

double number_or(const json& j, const char* key, const std::string& path,
                 double fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return number(j.at(key), path + "." + key);
}

Complex complex_value(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(path, "must be a number or a [re, im] pair");
}

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& path) {
  if (!j.is_object()) return;
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find_if(known.begin(), known.end(), [&key](const char* k) {
          return key == k;
        }) == known.end()) {
      fail(path + "." + key, "unknown field");
    }
  }
}

json complex_to_json(Complex v) { return json::array({v.real(), v.imag()}); }

MediumParams medium_from_json(const json& j, const std::string& path) {
  reject_unknown(j,
                 {"omega12_tau", "omega13_tau", "delta1_tau", "delta2_tau",
                  "delta3_tau", "gamma1_tau", "gamma2_tau", "gamma3_tau",
                  "kappa02_c_tau2", "kappa03_c_tau2"},
                 path);
  MediumParams m;
  m.omega12 = complex_value(require(j, "omega12_tau", path), path + ".omega12_tau");
  m.omega13 = complex_value(require(j, "omega13_tau", path), path + ".omega13_tau");
  m.delta1 = number_or(j, "delta1_tau", path, 0.0);
  m.delta2 = number_or(j, "delta2_tau", path, 0.0);
  m.delta3 = number_or(j, "delta3_tau", path, 0.0);
  m.gamma1 = number_or(j, "gamma1_tau", path, 0.0);
  m.gamma2 = number_or(j, "gamma2_tau", path, 0.0);
  m.gamma3 = number_or(j, "gamma3_tau", path, 0.0);
  m.kappa02 = number_field(j, "kappa02_c_tau2", path);
  m.kappa03 = number_field(j, "kappa03_c_tau2", path);
  return m;
}

json medium_to_json(const MediumParams& m) {
  json j;
  j["omega12_tau"] = complex_to_json(m.omega12);
  j["omega13_tau"] = complex_to_json(m.omega13);
  j["delta1_tau"] = m.delta1;
  j["delta2_tau"] = m.delta2;
  j["delta3_tau"] = m.delta3;
  j["gamma1_tau"] = m.gamma1;
  j["gamma2_tau"] = m.gamma2;
  j["gamma3_tau"] = m.gamma3;
  j["kappa02_c_tau2"] = m.kappa02;
  j["kappa03_c_tau2"] = m.kappa03;
  return j;
}

ProbePulse pulse_from_json(const json& j, const std::string& path) {
  reject_unknown(j, {"amplitude", "shape", "t0", "dt", "samples"}, path);
  ProbePulse p;
  if (j.contains("amplitude")) {
    p.amplitude = complex_value(j.at("amplitude"), path + ".amplitude");
  }
  std::string shape = "gaussian";
  if (j.contains("shape")) {
    if (!j.at("shape").is_string()) fail(path + ".shape", "must be a string");
    shape = j.at("shape").get<std::string>();
  }
  if (shape == "gaussian") {
    p.shape = ProbePulse::Shape::Gaussian;
    if (j.contains("samples") || j.contains("t0") || j.contains("dt")) {
      fail(path + ".samples", "only valid for shape \"tabulated\"");
    }
  } else if (shape == "tabulated") {
    p.shape = ProbePulse::Shape::Tabulated;
    p.t0 = number_field(j, "t0", path);
    p.dt = number_field(j, "dt", path);
    const json& samples = require(j, "samples", path);
    if (!samples.is_array()) fail(path + ".samples", "must be an array");
    p.samples.reserve(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
      p.samples.push_back(
          complex_value(samples[k], path + ".samples[" + std::to_string(k) + "]"));
    }
  } else {
    fail(path + ".shape", "must be \"gaussian\" or \"tabulated\"");
  }
  return p;
}

json pulse_to_json(const ProbePulse& p) {
  json j;
  j["amplitude"] = complex_to_json(p.amplitude);
  if (p.shape == ProbePulse::Shape::Gaussian) {
    j["shape"] = "gaussian";
  } else {
    j["shape"] = "tabulated";
    j["t0"] = p.t0;
    j["dt"] = p.dt;
    json samples = json::array();
    for (const Complex& s : p.samples) samples.push_back(complex_to_json(s));
    j["samples"] = std::move(samples);
  }
  return j;
}

constexpr const char* kRunKeys[] = {"medium",        "pulse",   "z_over_c_tau",
                                    "time_grid",     "spectral_grid",
                                    "solvers",       "c_tau_cm", "output"};

RunConfig run_from_json_impl(const json& j, bool allow_sweep_key) {
  if (!j.is_object()) fail("config", "top level must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (allow_sweep_key && key == "sweep") continue;
    if (std::find_if(std::begin(kRunKeys), std::end(kRunKeys),
                     [&key](const char* k) { return key == k; }) ==
        std::end(kRunKeys)) {
      fail(key, "unknown field");
    }
  }

  RunConfig c;
  c.medium = medium_from_json(require(j, "medium", "config"), "medium");
  if (j.contains("pulse")) c.pulse = pulse_from_json(j.at("pulse"), "pulse");

  const json& zj = require(j, "z_over_c_tau", "config");
  if (zj.is_string()) {
    if (zj.get<std::string>() != "auto") {
      fail("z_over_c_tau", "must be a number or \"auto\"");
    }
    c.z_auto = true;
    c.z = 0.0;
  } else {
    c.z = number(zj, "z_over_c_tau");
    c.z_auto = false;
  }

  if (j.contains("time_grid")) {
    const json& tg = j.at("time_grid");
    if (tg.is_string()) {
      if (tg.get<std::string>() != "auto") {
        fail("time_grid", "must be \"auto\" or an object with min/max/n");
      }
      c.time_grid.automatic = true;
    } else {
      reject_unknown(tg, {"min", "max", "n"}, "time_grid");
      c.time_grid.automatic = false;
      c.time_grid.min = number_field(tg, "min", "time_grid");
      c.time_grid.max = number_field(tg, "max", "time_grid");
      c.time_grid.n = static_cast<std::size_t>(number_or(tg, "n", "time_grid", 2001.0));
    }
  }

  if (j.contains("spectral_grid")) {
    const json& sg = j.at("spectral_grid");
    reject_unknown(sg, {"eta_min", "eta_max", "n_points"}, "spectral_grid");
    c.spectral_grid.eta_min = number_or(sg, "eta_min", "spectral_grid", -16.0);
    c.spectral_grid.eta_max = number_or(sg, "eta_max", "spectral_grid", 16.0);
    c.spectral_grid.n_points =
        static_cast<std::size_t>(number_or(sg, "n_points", "spectral_grid", 4096.0));
  }

  const json& solvers = require(j, "solvers", "config");
  if (!solvers.is_array()) fail("solvers", "must be an array of solver names");
  for (const auto& s : solvers) {
    if (!s.is_string()) fail("solvers", "must be an array of solver names");
    c.solvers.push_back(s.get<std::string>());
  }

  c.c_tau_cm = number_or(j, "c_tau_cm", "config", 1.0);

  if (j.contains("output")) {
    const json& out = j.at("output");
    reject_unknown(out, {"path", "format"}, "output");
    if (out.contains("path")) {
      if (!out.at("path").is_string()) fail("output.path", "must be a string");
      c.output_path = out.at("path").get<std::string>();
    }
    if (out.contains("format")) {
      if (!out.at("format").is_string()) fail("output.format", "must be a string");
      c.output_format = out.at("format").get<std::string>();
    }
  }

  c.validate();
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("config", "cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    fail("config", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

void RunConfig::validate() const {
  medium.validate();
  pulse.validate();
  if (!z_auto) {
    if (!std::isfinite(z) || z < 0.0) fail("z_over_c_tau", "must be >= 0");
  }
  if (!time_grid.automatic) {
    if (!(time_grid.min < time_grid.max)) fail("time_grid.min", "requires min < max");
    if (time_grid.n < 2) fail("time_grid.n", "must be >= 2");
  }
  spectral_grid.validate();
  if (solvers.empty()) fail("solvers", "at least one solver required");
  for (const std::string& s : solvers) {
    if (s != "spectral" && s != "analytic" && s != "oracle") {
      fail("solvers", "unknown solver \"" + s +
                          "\" (expected spectral, analytic, or oracle)");
    }
  }
  for (std::size_t a = 0; a < solvers.size(); ++a) {
    for (std::size_t b = a + 1; b < solvers.size(); ++b) {
      if (solvers[a] == solvers[b]) fail("solvers", "duplicate solver " + solvers[a]);
    }
  }
  if (!(c_tau_cm > 0.0) || !std::isfinite(c_tau_cm)) {
    fail("c_tau_cm", "must be a positive number");
  }
  if (output_format != "csv" && output_format != "json") {
    fail("output.format", "must be \"csv\" or \"json\"");
  }
  if (output_path.empty()) fail("output.path", "must not be empty");
}

void SweepSpec::validate() const {
  if (values.empty()) fail("sweep.values", "at least one value required");
  for (double v : values) {
    if (!std::isfinite(v)) fail("sweep.values", "values must be finite");
    if (parameter == Parameter::RabiRatioSq && v < 0.0) {
      fail("sweep.values", "coupling ratio squared must be >= 0");
    }
  }
  base.validate();
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  return run_from_json_impl(j, false);
}

nlohmann::json run_config_to_json(const RunConfig& config) {
  json j;
  j["medium"] = medium_to_json(config.medium);
  j["pulse"] = pulse_to_json(config.pulse);
  if (config.z_auto) {
    j["z_over_c_tau"] = "auto";
  } else {
    j["z_over_c_tau"] = config.z;
  }
  if (config.time_grid.automatic) {
    j["time_grid"] = "auto";
  } else {
    j["time_grid"] = {{"min", config.time_grid.min},
                      {"max", config.time_grid.max},
                      {"n", config.time_grid.n}};
  }
  j["spectral_grid"] = {{"eta_min", config.spectral_grid.eta_min},
                        {"eta_max", config.spectral_grid.eta_max},
                        {"n_points", config.spectral_grid.n_points}};
  j["solvers"] = config.solvers;
  j["c_tau_cm"] = config.c_tau_cm;
  j["output"] = {{"path", config.output_path}, {"format", config.output_format}};
  return j;
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  SweepSpec spec;
  const json& sj = require(j, "sweep", "config");
  reject_unknown(sj, {"parameter", "values"}, "sweep");
  const json& pj = require(sj, "parameter", "sweep");
  if (!pj.is_string()) fail("sweep.parameter", "must be a string");
  const std::string name = pj.get<std::string>();
  if (name == "delta2_tau") {
    spec.parameter = SweepSpec::Parameter::Delta2;
  } else if (name == "delta3_tau") {
    spec.parameter = SweepSpec::Parameter::Delta3;
  } else if (name == "rabi_ratio_sq") {
    spec.parameter = SweepSpec::Parameter::RabiRatioSq;
  } else {
    fail("sweep.parameter",
         "must be delta2_tau, delta3_tau, or rabi_ratio_sq");
  }
  const json& vj = require(sj, "values", "sweep");
  if (!vj.is_array()) fail("sweep.values", "must be an array of numbers");
  for (std::size_t k = 0; k < vj.size(); ++k) {
    spec.values.push_back(
        number(vj[k], "sweep.values[" + std::to_string(k) + "]"));
  }
  spec.base = run_from_json_impl(j, true);
  spec.validate();
  return spec;
}

RunConfig load_run_config(const std::string& path) {
  return run_config_from_json(read_json_file(path));
}

SweepSpec load_sweep_spec(const std::string& path) {
  return sweep_spec_from_json(read_json_file(path));
}

RunConfig apply_sweep_value(const SweepSpec& spec, double value) {
  RunConfig c = spec.base;
  switch (spec.parameter) {
    case SweepSpec::Parameter::Delta2:
      c.medium.delta2 = value;
      break;
    case SweepSpec::Parameter::Delta3:
      c.medium.delta3 = value;
      break;
    case SweepSpec::Parameter::RabiRatioSq: {
      const double mag = std::sqrt(value) * std::abs(c.medium.omega12);
      const double phase =
          c.medium.omega13 == Complex{0.0, 0.0} ? 0.0 : std::arg(c.medium.omega13);
      c.medium.omega13 = std::polar(mag, phase);
      break;
    }
  }
  return c;
}

std::string sweep_parameter_name(SweepSpec::Parameter parameter) {
  switch (parameter) {
    case SweepSpec::Parameter::Delta2:
      return "delta2_tau";
    case SweepSpec::Parameter::Delta3:
      return "delta3_tau";
    case SweepSpec::Parameter::RabiRatioSq:
      return "rabi_ratio_sq";
  }
  return "unknown";
}

}  // namespace lambdafwm
