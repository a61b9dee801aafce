#pragma once

#include <cstddef>
#include <vector>

#include "lambdafwm/medium.hpp"

namespace lambdafwm {

/// Uniform frequency grid over eta = omega*tau.
struct SpectralGrid {
  double eta_min = -16.0;
  double eta_max = 16.0;
  std::size_t n_points = 4096;

  double spacing() const {
    return (eta_max - eta_min) / static_cast<double>(n_points - 1);
  }
  double eta(std::size_t j) const {
    return eta_min + spacing() * static_cast<double>(j);
  }

  void validate(const std::string& prefix = "spectral_grid") const;
};

/// Complex spectra of the two field channels on a SpectralGrid, units of tau.
struct SpectralField {
  SpectralGrid grid;
  std::vector<Complex> w20;
  std::vector<Complex> w30;
};

/// Complex time-domain envelopes at fixed z. times in units of tau,
/// envelopes in units 1/tau (Omega*tau), z in units of c*tau.
struct EnvelopeTrace {
  std::vector<double> times;
  std::vector<Complex> omega20;
  std::vector<Complex> omega30;
  double z = 0.0;
};

/// Photon-flux conversion efficiency versus time, plus its sampled peak.
struct EfficiencyTrace {
  std::vector<double> times;
  std::vector<double> efficiency;
  double peak = 0.0;
  double peak_time = 0.0;
};

}  // namespace lambdafwm
