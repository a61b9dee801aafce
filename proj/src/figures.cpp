#include "lambdafwm/figures.hpp"

namespace lambdafwm::figures {

std::optional<Id> id_from_string(const std::string& name) {
  if (name == "fig2a") return Id::Fig2a;
  if (name == "fig2b") return Id::Fig2b;
  if (name == "fig3a") return Id::Fig3a;
  if (name == "fig3b") return Id::Fig3b;
  if (name == "fig4") return Id::Fig4;
  return std::nullopt;
}

std::string id_name(Id id) {
  switch (id) {
    case Id::Fig2a:
      return "fig2a";
    case Id::Fig2b:
      return "fig2b";
    case Id::Fig3a:
      return "fig3a";
    case Id::Fig3b:
      return "fig3b";
    case Id::Fig4:
      return "fig4";
  }
  return "unknown";
}

std::vector<Id> all_ids() {
  return {Id::Fig2a, Id::Fig2b, Id::Fig3a, Id::Fig3b, Id::Fig4};
}

MediumParams detuned_medium() {
  MediumParams m;
  m.omega12 = {200.0, 0.0};
  m.omega13 = {100.0, 0.0};
  m.delta1 = 0.0;
  m.delta2 = 20.0;
  m.delta3 = 20.0;
  m.gamma1 = 0.1;
  m.gamma2 = 0.1;
  m.gamma3 = 0.1;
  m.kappa02 = 40.0;
  m.kappa03 = 10.0;
  return m;
}

MediumParams detuned_medium_half() {
  MediumParams m = detuned_medium();
  m.delta2 = 10.0;
  m.delta3 = 10.0;
  return m;
}

MediumParams onresonance_medium() {
  MediumParams m;
  m.omega12 = {5.0, 0.0};
  m.omega13 = {20.0, 0.0};
  m.gamma1 = 0.02;
  m.gamma2 = 2.0;
  m.gamma3 = 2.0;
  m.kappa02 = 200.0;
  m.kappa03 = 200.0;
  return m;
}

MediumParams matched_medium() {
  MediumParams m;
  m.omega12 = {50.0, 0.0};
  m.omega13 = {50.0, 0.0};
  m.gamma1 = 0.02;
  m.gamma2 = 2.0;
  m.gamma3 = 2.0;
  m.kappa02 = 100.0;
  m.kappa03 = 100.0;
  return m;
}

namespace {

RunConfig base_run(const MediumParams& medium, double z, bool z_auto,
                   const std::string& name) {
  RunConfig c;
  c.medium = medium;
  c.z = z;
  c.z_auto = z_auto;
  c.solvers = {"analytic", "spectral"};
  c.output_path = name;
  return c;
}

}  // namespace

RunConfig figure_run(Id id) {
  switch (id) {
    case Id::Fig2a:
      return base_run(detuned_medium(), kDetunedOptimalZ, false, "fig2a");
    case Id::Fig2b:
      return base_run(detuned_medium_half(), kDetunedHalfOptimalZ, false, "fig2b");
    case Id::Fig3a:
      return base_run(detuned_medium(), 0.0, true, "fig3a");
    case Id::Fig3b:
      return base_run(detuned_medium(), 0.0, true, "fig3b");
    case Id::Fig4:
      return base_run(detuned_medium(), 0.0, true, "fig4");
  }
  return {};
}

std::vector<double> sweep_values(Id id) {
  switch (id) {
    case Id::Fig3a:
    case Id::Fig3b:
      return {10.0, 20.0, 40.0, 60.0};
    case Id::Fig4:
      return {1.0, 0.5, 0.25, 0.1};
    default:
      return {};
  }
}

std::optional<SweepSpec> figure_sweep(Id id) {
  SweepSpec spec;
  switch (id) {
    case Id::Fig3a:
      spec.parameter = SweepSpec::Parameter::Delta2;
      break;
    case Id::Fig3b:
      spec.parameter = SweepSpec::Parameter::Delta3;
      break;
    case Id::Fig4:
      spec.parameter = SweepSpec::Parameter::RabiRatioSq;
      break;
    default:
      return std::nullopt;
  }
  spec.values = sweep_values(id);
  spec.base = figure_run(id);
  return spec;
}

}  // namespace lambdafwm::figures
