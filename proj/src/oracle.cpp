#include "lambdafwm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lambdafwm/limits.hpp"
#include "lambdafwm/propagator.hpp"

namespace lambdafwm {

void SpaceTimeGrid::validate(const std::string& prefix) const {
  if (z_steps < 8) throw ConfigError(prefix + ".z_steps", "must be >= 8");
  if (s_steps < 64) throw ConfigError(prefix + ".s_steps", "must be >= 64");
  if (!(s_min < s_max)) throw ConfigError(prefix + ".s_min", "requires s_min < s_max");
  if (s_min > -5.0 || s_max < 5.0) {
    throw ConfigError(prefix + ".s_min", "s range must cover the pulse support [-5, 5]");
  }
}

namespace {

struct AtomicSystem {
  Complex i_dc1, i_dc2, i_dc3;  // i * (delta_i + i*gamma_i/2)
  Complex i_o12, i_o13, i_o21, i_o31;
  Complex i_unit{0.0, 1.0};

  explicit AtomicSystem(const MediumParams& p) {
    const auto [d1, d2, d3] = detuning_factors(p, 0.0);
    i_dc1 = i_unit * d1;
    i_dc2 = i_unit * d2;
    i_dc3 = i_unit * d3;
    i_o12 = i_unit * p.omega12;
    i_o13 = i_unit * p.omega13;
    i_o21 = i_unit * p.omega21();
    i_o31 = i_unit * p.omega31();
  }
};

struct Amp {
  Complex a1, a2, a3;
};

inline Amp rhs(const AtomicSystem& sys, const Amp& a, Complex w20, Complex w30) {
  return {sys.i_dc1 * a.a1 + sys.i_o12 * a.a2 + sys.i_o13 * a.a3,
          sys.i_dc2 * a.a2 + sys.i_o21 * a.a1 + sys.i_unit * w20,
          sys.i_dc3 * a.a3 + sys.i_o31 * a.a1 + sys.i_unit * w30};
}

// Field value halfway between nodes j and j+1: cubic midpoint formula, falling
// back to linear at the grid edges (the envelopes vanish there).
inline Complex midpoint(const std::vector<Complex>& w, std::size_t j) {
  if (j == 0 || j + 2 >= w.size()) {
    return 0.5 * (w[j] + w[j + 1]);
  }
  return (-w[j - 1] + 9.0 * (w[j] + w[j + 1]) - w[j + 2]) / 16.0;
}

// One sweep over s: classical 4th-order integration of the three amplitudes
// driven by the given fields, atoms in the ground state at s_min. Outputs the
// a2, a3 node values needed by the field march and the largest amplitude norm.
double integrate_amplitudes(const AtomicSystem& sys, const std::vector<Complex>& w20,
                            const std::vector<Complex>& w30, double ds,
                            std::vector<Complex>& a2_out, std::vector<Complex>& a3_out) {
  const std::size_t nodes = w20.size();
  Amp a{{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  a2_out[0] = a.a2;
  a3_out[0] = a.a3;
  double max_norm = 0.0;
  for (std::size_t j = 0; j + 1 < nodes; ++j) {
    const Complex w20m = midpoint(w20, j);
    const Complex w30m = midpoint(w30, j);
    const Amp k1 = rhs(sys, a, w20[j], w30[j]);
    const Amp y2{a.a1 + 0.5 * ds * k1.a1, a.a2 + 0.5 * ds * k1.a2,
                 a.a3 + 0.5 * ds * k1.a3};
    const Amp k2 = rhs(sys, y2, w20m, w30m);
    const Amp y3{a.a1 + 0.5 * ds * k2.a1, a.a2 + 0.5 * ds * k2.a2,
                 a.a3 + 0.5 * ds * k2.a3};
    const Amp k3 = rhs(sys, y3, w20m, w30m);
    const Amp y4{a.a1 + ds * k3.a1, a.a2 + ds * k3.a2, a.a3 + ds * k3.a3};
    const Amp k4 = rhs(sys, y4, w20[j + 1], w30[j + 1]);
    const double w6 = ds / 6.0;
    a.a1 += w6 * (k1.a1 + 2.0 * (k2.a1 + k3.a1) + k4.a1);
    a.a2 += w6 * (k1.a2 + 2.0 * (k2.a2 + k3.a2) + k4.a2);
    a.a3 += w6 * (k1.a3 + 2.0 * (k2.a3 + k3.a3) + k4.a3);
    a2_out[j + 1] = a.a2;
    a3_out[j + 1] = a.a3;
    max_norm = std::max(max_norm, std::norm(a.a1) + std::norm(a.a2) + std::norm(a.a3));
  }
  return max_norm;
}

EnvelopeTrace march(const MediumParams& params, const ProbePulse& pulse, double z,
                    const SpaceTimeGrid& grid) {
  const AtomicSystem sys(params);
  const std::size_t nodes = grid.s_steps + 1;
  const double ds = grid.ds();

  std::vector<Complex> w20(nodes), w30(nodes, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < nodes; ++j) {
    w20[j] = pulse.envelope(grid.s_min + ds * static_cast<double>(j));
  }

  std::vector<Complex> a2(nodes), a3(nodes), a2p(nodes), a3p(nodes);
  std::vector<Complex> pred20(nodes), pred30(nodes);
  const double dz = z / static_cast<double>(grid.z_steps);
  const Complex ik02 = Complex{0.0, 1.0} * params.kappa02;
  const Complex ik03 = Complex{0.0, 1.0} * params.kappa03;

  for (std::size_t step = 0; step < grid.z_steps; ++step) {
    const double norm1 = integrate_amplitudes(sys, w20, w30, ds, a2, a3);
    if (!std::isfinite(norm1) || norm1 > 1.1) {
      throw StepTooLarge("amplitude norm " + std::to_string(norm1) + " at z step " +
                         std::to_string(step) + "; refine the march");
    }
    for (std::size_t j = 0; j < nodes; ++j) {
      pred20[j] = w20[j] + dz * (ik02 * a2[j]);
      pred30[j] = w30[j] + dz * (ik03 * a3[j]);
    }
    const double norm2 = integrate_amplitudes(sys, pred20, pred30, ds, a2p, a3p);
    if (!std::isfinite(norm2) || norm2 > 1.1) {
      throw StepTooLarge("amplitude norm " + std::to_string(norm2) + " at z step " +
                         std::to_string(step) + " (corrector); refine the march");
    }
    const double half = 0.5 * dz;
    for (std::size_t j = 0; j < nodes; ++j) {
      w20[j] += half * (ik02 * (a2[j] + a2p[j]));
      w30[j] += half * (ik03 * (a3[j] + a3p[j]));
    }
  }

  EnvelopeTrace trace;
  trace.z = z;
  trace.times.resize(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    trace.times[j] = grid.s_min + ds * static_cast<double>(j) + z;
  }
  trace.omega20 = std::move(w20);
  trace.omega30 = std::move(w30);
  return trace;
}

double slowest_delay_factor(const MediumParams& params) {
  double slowest = 1.0;
  try {
    slowest = std::max(slowest, vg1_inverse(params));
  } catch (const Error&) {
  }
  try {
    slowest = std::max(slowest, propagation_constants(params).inv_vg);
  } catch (const Error&) {
  }
  return slowest;
}

}  // namespace

SpaceTimeGrid suggest_grid(const MediumParams& params, double z) {
  const double omega_max =
      std::max({std::abs(params.omega12), std::abs(params.omega13), 1.0});
  const double ds_target = 0.1 / omega_max;

  SpaceTimeGrid grid;
  grid.s_min = -6.0;
  grid.s_max = 6.0 + z * (slowest_delay_factor(params) - 1.0);
  grid.s_steps = std::max<std::size_t>(
      64, static_cast<std::size_t>(std::ceil((grid.s_max - grid.s_min) / ds_target)));

  // Explicit-march step bounds: stability against the fastest mode anywhere in
  // the discrete band, accuracy on the surviving mode inside the pulse band.
  const double nyquist = std::numbers::pi / grid.ds();
  double dev_max = 0.0;
  double slow_dev_max = 0.0;
  for (double eta = -nyquist; eta <= nyquist; eta += 0.02) {
    try {
      const SpectralResponse r = spectral_response(params, eta);
      const double dev_plus = std::abs(r.d_bar + r.lambda_big - eta);
      const double dev_minus = std::abs(r.d_bar - r.lambda_big - eta);
      dev_max = std::max(dev_max, std::max(dev_plus, dev_minus));
      if (std::abs(eta) <= 6.0) {
        slow_dev_max = std::max(slow_dev_max, std::min(dev_plus, dev_minus));
      }
    } catch (const SingularResponse&) {
      // A pole on the axis; the runtime monitor guards the march itself.
    }
  }
  const double h_stab = 1.5 / std::max(dev_max, 1e-9);
  const double h_acc = 0.02 / std::max(slow_dev_max, 1e-9);
  const double dz = std::min(h_stab, h_acc);
  grid.z_steps = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(z / dz)));
  return grid;
}

EnvelopeTrace oracle_solve(const MediumParams& params, const ProbePulse& pulse,
                           double z, const SpaceTimeGrid& grid,
                           const OracleOptions& options) {
  params.validate();
  pulse.validate();
  grid.validate();
  const double omega_max =
      std::max({std::abs(params.omega12), std::abs(params.omega13), 1.0});
  if (grid.ds() > 0.1 / omega_max) {
    throw ConfigError("spacetime_grid.s_steps",
                      "ds must be <= 0.1/max coupling to resolve the Rabi cycle");
  }
  if (!(z > 0.0)) throw ConfigError("z_over_c_tau", "must be > 0");

  EnvelopeTrace fine = march(params, pulse, z, grid);

  if (options.richardson_check) {
    SpaceTimeGrid coarse = grid;
    coarse.z_steps = std::max<std::size_t>(8, grid.z_steps / 2);
    coarse.s_steps = std::max<std::size_t>(64, grid.s_steps / 2);
    const EnvelopeTrace half = march(params, pulse, z, coarse);
    const SolverComparison cmp = compare_traces(fine, half);
    const double err = std::max(cmp.rel_l2_20, cmp.rel_l2_30);
    if (err > options.richardson_tol) {
      throw NotConverged(err, options.richardson_tol);
    }
  }
  return fine;
}

SolverComparison compare_traces(const EnvelopeTrace& a, const EnvelopeTrace& b) {
  auto sample_b = [&b](double t, bool channel30) -> Complex {
    if (b.times.empty()) return {0.0, 0.0};
    if (t <= b.times.front() || t >= b.times.back()) return {0.0, 0.0};
    const auto it = std::upper_bound(b.times.begin(), b.times.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - b.times.begin()) - 1;
    const double span = b.times[j + 1] - b.times[j];
    const double f = span > 0.0 ? (t - b.times[j]) / span : 0.0;
    const auto& w = channel30 ? b.omega30 : b.omega20;
    return w[j] * (1.0 - f) + w[j + 1] * f;
  };

  SolverComparison cmp;
  double diff2_20 = 0.0, diff2_30 = 0.0, ref2_20 = 0.0, ref2_30 = 0.0;
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    const Complex d20 = a.omega20[k] - sample_b(a.times[k], false);
    const Complex d30 = a.omega30[k] - sample_b(a.times[k], true);
    cmp.max_abs_20 = std::max(cmp.max_abs_20, std::abs(d20));
    cmp.max_abs_30 = std::max(cmp.max_abs_30, std::abs(d30));
    diff2_20 += std::norm(d20);
    diff2_30 += std::norm(d30);
    ref2_20 += std::norm(a.omega20[k]);
    ref2_30 += std::norm(a.omega30[k]);
  }
  auto rel = [](double diff2, double ref2) {
    if (ref2 > 0.0) return std::sqrt(diff2 / ref2);
    return diff2 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  };
  cmp.rel_l2_20 = rel(diff2_20, ref2_20);
  cmp.rel_l2_30 = rel(diff2_30, ref2_30);
  return cmp;
}

SolverComparison compare_solvers(const MediumParams& params, const ProbePulse& pulse,
                                 double z) {
  const std::vector<double> times = default_time_grid(params, z);
  const EnvelopeTrace spectral = solve_spectral(params, pulse, z, times);
  const EnvelopeTrace oracle = oracle_solve(params, pulse, z, suggest_grid(params, z));
  return compare_traces(spectral, oracle);
}

}  // namespace lambdafwm
