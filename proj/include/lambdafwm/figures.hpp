#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lambdafwm/config.hpp"

namespace lambdafwm::figures {

/// Named reference datasets. fig2a/fig2b: single high-efficiency detuned runs
/// at the constructive distance. fig3a/fig3b: detuning sweeps. fig4: sweep of
/// the coupling ratio |omega13/omega12|^2 at kappa02/kappa03 = 4.
enum class Id { Fig2a, Fig2b, Fig3a, Fig3b, Fig4 };

std::optional<Id> id_from_string(const std::string& name);
std::string id_name(Id id);
std::vector<Id> all_ids();

/// Strongly detuned high-efficiency medium: omega12=200, omega13=100,
/// kappa02=40, kappa03=10, gamma=0.1 each, delta2=delta3=20.
MediumParams detuned_medium();

/// Same medium at half the detunings (delta2=delta3=10).
MediumParams detuned_medium_half();

/// On-resonance reference medium: kappa02=kappa03=200, omega12=5, omega13=20,
/// gamma1=0.02, gamma2=gamma3=2, all detunings zero.
MediumParams onresonance_medium();

/// Matched on-resonance medium used for the quarter-ceiling checks:
/// omega12=omega13=50, kappa02=kappa03=100, gamma1=0.02, gamma2=gamma3=2.
MediumParams matched_medium();

/// Distance of first constructive recombination for the detuned media.
inline constexpr double kDetunedOptimalZ = 3.927;      // pi/0.8
inline constexpr double kDetunedHalfOptimalZ = 1.963;  // pi/1.6

/// Base RunConfig for a figure id (single-run figures) or the sweep driving it.
RunConfig figure_run(Id id);

/// Sweep values for the sweep figures; empty for fig2a/fig2b.
std::vector<double> sweep_values(Id id);
std::optional<SweepSpec> figure_sweep(Id id);

}  // namespace lambdafwm::figures
