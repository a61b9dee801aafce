#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "lambdafwm/errors.hpp"
#include "lambdafwm/figures.hpp"
#include "lambdafwm/propagator.hpp"

namespace {

using lambdafwm::Complex;
using lambdafwm::EnvelopeTrace;
using lambdafwm::MediumParams;
using lambdafwm::ProbePulse;
using lambdafwm::SpectralField;
using lambdafwm::SpectralGrid;
using lambdafwm::SpectralResponse;
using lambdafwm::TransferMatrix;
using CLD = std::complex<long double>;

// Grid with power-of-two spacing 1/128 so integer eta values land exactly on
// grid nodes.
SpectralGrid exact_grid() {
  SpectralGrid g;
  g.n_points = 4097;
  return g;
}

MediumParams complex_coupling_medium() {
  MediumParams p;
  p.omega12 = {3.0, 4.0};
  p.omega13 = {2.0, -1.0};
  p.delta1 = 0.7;
  p.delta2 = -1.3;
  p.delta3 = 2.2;
  p.gamma1 = 0.3;
  p.gamma2 = 0.8;
  p.gamma3 = 1.1;
  p.kappa02 = 5.0;
  p.kappa03 = 7.0;
  return p;
}

struct TransferRef {
  CLD t11, t12, t21, t22;
};

// exp(i M z) for M = d_bar*I + [[dk, s2],[s3, -dk]] evaluated directly in
// extended precision; at |lambda*z| ~ 5e-4 the direct difference quotient
// still keeps ~15 good digits, which is what makes it a valid reference for
// the series path of the implementation.
TransferRef reference_transfer(const SpectralResponse& r, double z) {
  const CLD i{0.0L, 1.0L};
  const CLD dbar{r.d_bar.real(), r.d_bar.imag()};
  const CLD lam{r.lambda_big.real(), r.lambda_big.imag()};
  const CLD zl{static_cast<long double>(z), 0.0L};
  const CLD ep = std::exp(i * (dbar + lam) * zl);
  const CLD em = std::exp(i * (dbar - lam) * zl);
  const CLD even = 0.5L * (ep + em);
  const CLD odd = std::abs(lam) > 0.0L ? (ep - em) / (2.0L * lam)
                                       : i * zl * std::exp(i * dbar * zl);
  const CLD dk = 0.5L * (CLD{r.k2.real(), r.k2.imag()} - CLD{r.k3.real(), r.k3.imag()});
  const CLD s2{r.s2.real(), r.s2.imag()};
  const CLD s3{r.s3.real(), r.s3.imag()};
  return {even + odd * dk, odd * s2, odd * s3, even - odd * dk};
}

double transfer_dev(const TransferMatrix& got, const TransferRef& want) {
  const auto dev = [](Complex g, CLD w) {
    return static_cast<double>(std::abs(CLD{g.real(), g.imag()} - w));
  };
  const long double scale =
      std::max({std::abs(want.t11), std::abs(want.t12), std::abs(want.t21),
                std::abs(want.t22), 1.0L});
  return std::max({dev(got.t11, want.t11), dev(got.t12, want.t12),
                   dev(got.t21, want.t21), dev(got.t22, want.t22)}) /
         static_cast<double>(scale);
}

}  // namespace

TEST_SUITE("propagator") {

TEST_CASE("gaussian pulse spectrum has the closed form") {
  ProbePulse pulse;
  pulse.amplitude = {0.3, 0.4};
  const SpectralGrid grid = exact_grid();
  const SpectralField f = lambdafwm::probe_spectrum(pulse, grid);
  REQUIRE(f.w20.size() == grid.n_points);
  REQUIRE(f.w30.size() == grid.n_points);

  const std::size_t j0 = 2048;  // eta = 0
  REQUIRE(grid.eta(j0) == 0.0);
  const Complex at0 = pulse.amplitude * (1.0 / std::sqrt(2.0));
  CHECK(std::abs(f.w20[j0] - at0) < 1e-15);

  const std::size_t j2 = 2048 + 256;  // eta = 2
  REQUIRE(grid.eta(j2) == 2.0);
  const Complex at2 = pulse.amplitude * (std::exp(-1.0) / std::sqrt(2.0));
  CHECK(std::abs(f.w20[j2] - at2) < 1e-15);

  for (const Complex& v : f.w30) CHECK(v == Complex{0.0, 0.0});
}

TEST_CASE("tabulated samples of a gaussian reproduce its spectrum") {
  ProbePulse tab;
  tab.shape = ProbePulse::Shape::Tabulated;
  tab.t0 = -8.0;
  tab.dt = 0.01;
  for (int j = 0; j <= 1600; ++j) {
    const double t = tab.t0 + tab.dt * j;
    tab.samples.push_back({std::exp(-t * t), 0.0});
  }
  const SpectralGrid grid = exact_grid();
  const SpectralField f = lambdafwm::probe_spectrum(tab, grid);
  for (std::size_t j = 0; j < grid.n_points; j += 128) {
    const double eta = grid.eta(j);
    const double closed = std::exp(-eta * eta / 4.0) / std::sqrt(2.0);
    CHECK(std::abs(f.w20[j] - Complex{closed, 0.0}) < 1e-12);
  }
}

TEST_CASE("coarse frequency grids are rejected") {
  ProbePulse pulse;
  SpectralGrid too_coarse;
  too_coarse.n_points = 60;  // spacing 0.54
  CHECK_THROWS_AS(lambdafwm::probe_spectrum(pulse, too_coarse),
                  lambdafwm::GridTooCoarse);

  // The inverse transform needs twice the resolution of the forward one.
  SpectralGrid marginal;
  marginal.n_points = 120;  // spacing 0.27: forward fine, inverse too coarse
  const SpectralField f = lambdafwm::probe_spectrum(pulse, marginal);
  CHECK_THROWS_AS(lambdafwm::inverse_transform(f, {0.0}, 0.0),
                  lambdafwm::GridTooCoarse);
}

TEST_CASE("inverse transform at z=0 recovers the envelope") {
  ProbePulse pulse;
  pulse.amplitude = {0.8, -0.2};
  const SpectralField f = lambdafwm::probe_spectrum(pulse, SpectralGrid{});
  const std::vector<double> times = {-2.5, -1.0, -0.3, 0.0, 0.7, 2.2};
  const EnvelopeTrace tr = lambdafwm::inverse_transform(f, times, 0.0);
  REQUIRE(tr.times == times);
  CHECK(tr.z == 0.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Complex want = pulse.amplitude * std::exp(-times[k] * times[k]);
    CHECK(std::abs(tr.omega20[k] - want) < 1e-12);
    CHECK(std::abs(tr.omega30[k]) < 1e-12);
  }
}

TEST_CASE("transfer matrix matches an extended-precision mode evaluation") {
  const std::array<std::pair<MediumParams, double>, 3> cases = {
      std::pair<MediumParams, double>{lambdafwm::figures::detuned_medium(), 0.3},
      std::pair<MediumParams, double>{lambdafwm::figures::onresonance_medium(), 1.7},
      std::pair<MediumParams, double>{complex_coupling_medium(), -2.2},
  };
  for (const auto& [params, eta] : cases) {
    CAPTURE(eta);
    const SpectralResponse r = lambdafwm::spectral_response(params, eta);
    const double lam = std::abs(r.lambda_big);
    REQUIRE(lam > 0.0);
    // One ordinary distance and one deep inside the small-|lambda*z| regime
    // where the implementation switches to its series form.
    const std::array<double, 2> zs = {1.0, 5e-4 / lam};
    for (double z : zs) {
      CAPTURE(z);
      const TransferMatrix got = lambdafwm::transfer_from_response(r, z);
      const TransferRef want = reference_transfer(r, z);
      CHECK(transfer_dev(got, want) < 1e-10);
    }
  }
}

TEST_CASE("square-root branch choice does not matter") {
  const MediumParams p = complex_coupling_medium();
  for (double eta : {-4.1, 0.0, 2.6}) {
    const SpectralResponse r = lambdafwm::spectral_response(p, eta);
    for (double z : {1e-4, 0.2, 3.0}) {
      const TransferMatrix a = lambdafwm::transfer_from_response(r, z, false);
      const TransferMatrix b = lambdafwm::transfer_from_response(r, z, true);
      const double scale = std::max(
          {std::abs(a.t11), std::abs(a.t12), std::abs(a.t21), std::abs(a.t22), 1.0});
      CHECK(std::abs(a.t11 - b.t11) <= 1e-13 * scale);
      CHECK(std::abs(a.t12 - b.t12) <= 1e-13 * scale);
      CHECK(std::abs(a.t21 - b.t21) <= 1e-13 * scale);
      CHECK(std::abs(a.t22 - b.t22) <= 1e-13 * scale);
    }
  }
}

TEST_CASE("gain parameters overflow cleanly instead of returning inf") {
  SpectralResponse r;
  r.d_bar = {0.0, -800.0};  // exp(i*d_bar*z) = exp(+800) at z=1
  r.k2 = r.d_bar;
  r.k3 = r.d_bar;
  r.lambda_big = {0.0, 0.0};
  r.s2 = {0.0, 0.0};
  r.s3 = {0.0, 0.0};
  r.delta_det = {1.0, 0.0};
  CHECK_THROWS_AS(lambdafwm::transfer_from_response(r, 1.0), lambdafwm::GainOverflow);
  try {
    lambdafwm::transfer_from_response(r, 1.0);
  } catch (const lambdafwm::GainOverflow& e) {
    CHECK(e.exponent == doctest::Approx(800.0));
  }
}

TEST_CASE("zero distance is the identity") {
  const MediumParams p = lambdafwm::figures::detuned_medium();
  ProbePulse pulse;
  const SpectralField f0 = lambdafwm::probe_spectrum(pulse, SpectralGrid{});
  const SpectralField fz = lambdafwm::propagate(p, f0, 0.0);
  for (std::size_t j = 0; j < f0.w20.size(); ++j) {
    CHECK(fz.w20[j] == f0.w20[j]);
    CHECK(fz.w30[j] == f0.w30[j]);
  }
}

TEST_CASE("strong coupling slows the transmitted pulse") {
  // Group delay z/V_g1 with 1/V_g1 = 1 + kappa02*kappa03/Sigma = 25/17 for
  // the on-resonance reference medium; small extra retardation from
  // second-order dispersion is allowed for.
  const MediumParams p = lambdafwm::figures::onresonance_medium();
  ProbePulse pulse;
  const double z = 10.0;
  const EnvelopeTrace tr =
      lambdafwm::solve_spectral(p, pulse, z, lambdafwm::default_time_grid(p, z));
  double peak30 = 0.0, t_peak = 0.0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    if (std::abs(tr.omega30[k]) > peak30) {
      peak30 = std::abs(tr.omega30[k]);
      t_peak = tr.times[k];
    }
  }
  CHECK(std::abs(t_peak - z * 25.0 / 17.0) < 0.15);
  CHECK(peak30 > 0.21);
  CHECK(peak30 < 0.23);
}

TEST_CASE("efficiency weights the generated channel by the coupling ratio") {
  MediumParams p;
  p.omega12 = 5.0;
  p.omega13 = 20.0;
  p.kappa02 = 40.0;
  p.kappa03 = 10.0;
  ProbePulse pulse;
  pulse.amplitude = {2.0, 0.0};

  EnvelopeTrace tr;
  tr.times = {0.0, 1.0, 2.0};
  tr.omega20 = {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  tr.omega30 = {{0.0, 0.0}, {0.6, 0.8}, {0.1, 0.0}};

  const lambdafwm::EfficiencyTrace eff = lambdafwm::efficiency_trace(tr, p, pulse);
  REQUIRE(eff.efficiency.size() == 3);
  CHECK(eff.efficiency[0] == 0.0);
  CHECK(eff.efficiency[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eff.efficiency[2] == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(eff.peak == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eff.peak_time == 1.0);

  pulse.amplitude = {0.0, 0.0};
  CHECK_THROWS_AS(lambdafwm::efficiency_trace(tr, p, pulse), lambdafwm::ZeroProbe);
}

TEST_CASE("interference diagnostic is one before and small after propagation") {
  const MediumParams p = lambdafwm::figures::onresonance_medium();
  ProbePulse pulse;
  const SpectralField f0 = lambdafwm::probe_spectrum(pulse, SpectralGrid{});

  // With no generated field the realized pathway IS the direct pathway.
  CHECK(lambdafwm::alpha3_quench(p, f0) == doctest::Approx(1.0).epsilon(1e-12));

  // After propagation the generated field nearly cancels it.
  const SpectralField fz = lambdafwm::propagate(p, f0, 3.0);
  const double q = lambdafwm::alpha3_quench(p, fz);
  CHECK(q > 0.01);
  CHECK(q < 0.05);

  SpectralField zero = f0;
  for (Complex& v : zero.w20) v = {0.0, 0.0};
  CHECK(lambdafwm::alpha3_quench(p, zero) == 0.0);
}

TEST_CASE("default time grid spans vacuum arrival to the slowest delay") {
  const MediumParams p = lambdafwm::figures::onresonance_medium();
  const std::vector<double> times = lambdafwm::default_time_grid(p, 10.0);
  REQUIRE(times.size() == 2001);
  CHECK(times.front() == doctest::Approx(10.0 - 5.0));
  CHECK(times.back() == doctest::Approx(10.0 * 25.0 / 17.0 + 5.0));
  for (std::size_t k = 1; k < times.size(); ++k) CHECK(times[k] > times[k - 1]);
}

TEST_CASE("aliased spectra are refined automatically") {
  const MediumParams p = lambdafwm::figures::detuned_medium();
  ProbePulse pulse;
  const double z = 120.0;
  const std::vector<double> times = lambdafwm::default_time_grid(p, z);

  // Direct transform on the default grid aliases: the propagation phase
  // eta*z advances by ~0.97 rad between samples.
  const SpectralField fz =
      lambdafwm::propagate(p, lambdafwm::probe_spectrum(pulse, SpectralGrid{}), z);
  CHECK_THROWS_AS(lambdafwm::inverse_transform(fz, times, z), lambdafwm::PhaseAliasing);

  // The driver doubles the grid until the phase is resolved.
  const EnvelopeTrace tr = lambdafwm::solve_spectral(p, pulse, z, times);
  double peak30 = 0.0, t_peak = 0.0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    if (std::abs(tr.omega30[k]) > peak30) {
      peak30 = std::abs(tr.omega30[k]);
      t_peak = tr.times[k];
    }
  }
  // At z far beyond the recombination distance the fast and slow humps are
  // fully walked off; the leading (undelayed) hump keeps |C3| = 1/4.
  CHECK(peak30 == doctest::Approx(0.25).epsilon(0.01));
  CHECK(std::abs(t_peak - z) < 0.5);
}

TEST_CASE("invalid medium parameters are rejected up front") {
  MediumParams p = lambdafwm::figures::detuned_medium();
  p.gamma2 = -0.1;
  ProbePulse pulse;
  CHECK_THROWS_AS(
      lambdafwm::solve_spectral(p, pulse, 1.0, lambdafwm::default_time_grid(
                                                   lambdafwm::figures::detuned_medium(), 1.0)),
      lambdafwm::ConfigError);
}

}  // TEST_SUITE
