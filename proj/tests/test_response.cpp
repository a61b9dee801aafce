#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>

#include "lambdafwm/errors.hpp"
#include "lambdafwm/figures.hpp"
#include "lambdafwm/response.hpp"

namespace {

using lambdafwm::Complex;
using lambdafwm::MediumParams;
using CLD = std::complex<long double>;

struct ExtendedSolution {
  CLD delta;
  std::array<CLD, 3> a;
};

// Reference evaluation of the same 3x3 driven system in extended precision:
// Gaussian elimination with partial pivoting, fully independent of the
// closed-form expressions under test.
ExtendedSolution solve_extended(const MediumParams& p, double eta, Complex w20,
                                Complex w30) {
  const CLD d1{p.delta1 + eta, 0.5L * static_cast<long double>(p.gamma1)};
  const CLD d2{p.delta2 + eta, 0.5L * static_cast<long double>(p.gamma2)};
  const CLD d3{p.delta3 + eta, 0.5L * static_cast<long double>(p.gamma3)};
  const CLD o12{p.omega12.real(), p.omega12.imag()};
  const CLD o13{p.omega13.real(), p.omega13.imag()};

  CLD m[3][4] = {
      {d1, o12, o13, CLD{0.0L, 0.0L}},
      {std::conj(o12), d2, CLD{0.0L, 0.0L}, -CLD{w20.real(), w20.imag()}},
      {std::conj(o13), CLD{0.0L, 0.0L}, d3, -CLD{w30.real(), w30.imag()}},
  };

  ExtendedSolution out;
  out.delta = d1 * d2 * d3 - d3 * std::norm(o12) - d2 * std::norm(o13);

  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    for (int c = 0; c < 4; ++c) std::swap(m[col][c], m[pivot][c]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const CLD f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  for (int r = 0; r < 3; ++r) out.a[r] = m[r][3] / m[r][r];
  return out;
}

double rel_dev(Complex got, CLD want) {
  const long double scale = std::max(std::abs(want), 1.0L);
  return static_cast<double>(std::abs(CLD{got.real(), got.imag()} - want) / scale);
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

const std::array<double, 5> kEtas = {-3.7, -0.5, 0.0, 1.1, 6.3};

}  // namespace

TEST_SUITE("response") {

TEST_CASE("detuning factors shift with frequency and carry half widths") {
  MediumParams p;
  p.delta1 = 1.0;
  p.delta2 = -2.0;
  p.delta3 = 3.0;
  p.gamma1 = 0.2;
  p.gamma2 = 0.4;
  p.gamma3 = 0.6;
  const auto [d1, d2, d3] = lambdafwm::detuning_factors(p, 0.5);
  CHECK(d1 == Complex{1.5, 0.1});
  CHECK(d2 == Complex{-1.5, 0.2});
  CHECK(d3 == Complex{3.5, 0.3});
}

TEST_CASE("determinant and wavenumbers match an extended-precision evaluation") {
  const std::array<MediumParams, 3> media = {
      lambdafwm::figures::detuned_medium(),
      lambdafwm::figures::onresonance_medium(),
      complex_coupling_medium(),
  };
  for (const MediumParams& p : media) {
    for (double eta : kEtas) {
      CAPTURE(eta);
      const lambdafwm::SpectralResponse r = lambdafwm::spectral_response(p, eta);
      const ExtendedSolution ref = solve_extended(p, eta, {1.0, 0.0}, {0.0, 0.0});
      CHECK(rel_dev(r.delta_det, ref.delta) < 1e-12);

      const CLD d1{r.d1.real(), r.d1.imag()};
      const CLD d2{r.d2.real(), r.d2.imag()};
      const CLD d3{r.d3.real(), r.d3.imag()};
      const CLD o12{p.omega12.real(), p.omega12.imag()};
      const CLD o13{p.omega13.real(), p.omega13.imag()};
      const long double etaL = eta;
      const long double kap02 = p.kappa02;
      const long double kap03 = p.kappa03;
      const CLD k2 = etaL + kap02 * (std::norm(o13) - d1 * d3) / ref.delta;
      const CLD k3 = etaL + kap03 * (std::norm(o12) - d1 * d2) / ref.delta;
      const CLD s2 = -kap02 * std::conj(o12) * o13 / ref.delta;
      const CLD s3 = -kap03 * std::conj(o13) * o12 / ref.delta;
      CHECK(rel_dev(r.k2, k2) < 1e-12);
      CHECK(rel_dev(r.k3, k3) < 1e-12);
      CHECK(rel_dev(r.s2, s2) < 1e-12);
      CHECK(rel_dev(r.s3, s3) < 1e-12);
      CHECK(rel_dev(r.d_bar, (k2 + k3) / 2.0L) < 1e-12);
    }
  }
}

TEST_CASE("mode splitting squares to the discriminant of the channel pair") {
  const MediumParams p = complex_coupling_medium();
  for (double eta : kEtas) {
    const lambdafwm::SpectralResponse r = lambdafwm::spectral_response(p, eta);
    const Complex half = 0.5 * (r.k2 - r.k3);
    const Complex want = half * half + r.s2 * r.s3;
    const Complex got = r.lambda_big * r.lambda_big;
    CHECK(std::abs(got - want) <= 1e-13 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("wavenumber cross product ties back to the determinant") {
  // (K2 - eta)(K3 - eta) - S2*S3 = kappa02*kappa03*D1/Delta for every medium:
  // an algebraic identity of the closed forms, sensitive to any sign slip.
  const std::array<MediumParams, 2> media = {
      lambdafwm::figures::detuned_medium(),
      complex_coupling_medium(),
  };
  for (const MediumParams& p : media) {
    for (double eta : kEtas) {
      const lambdafwm::SpectralResponse r = lambdafwm::spectral_response(p, eta);
      const Complex lhs = (r.k2 - eta) * (r.k3 - eta) - r.s2 * r.s3;
      const Complex rhs = p.kappa02 * p.kappa03 * r.d1 / r.delta_det;
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("amplitudes solve the driven linear system") {
  const std::array<MediumParams, 3> media = {
      lambdafwm::figures::detuned_medium(),
      lambdafwm::figures::onresonance_medium(),
      complex_coupling_medium(),
  };
  const std::array<std::pair<Complex, Complex>, 2> drives = {
      std::pair<Complex, Complex>{{0.7, 0.0}, {0.0, 0.0}},
      std::pair<Complex, Complex>{{0.3, -0.4}, {-0.2, 0.5}},
  };
  for (const MediumParams& p : media) {
    for (double eta : kEtas) {
      for (const auto& [w20, w30] : drives) {
        CAPTURE(eta);
        const auto [a1, a2, a3] = lambdafwm::atomic_amplitudes(p, eta, w20, w30);
        const ExtendedSolution ref = solve_extended(p, eta, w20, w30);
        CHECK(rel_dev(a1, ref.a[0]) < 1e-11);
        CHECK(rel_dev(a2, ref.a[1]) < 1e-11);
        CHECK(rel_dev(a3, ref.a[2]) < 1e-11);

        const auto [d1, d2, d3] = lambdafwm::detuning_factors(p, eta);
        const double scale = std::max({std::abs(w20), std::abs(w30), 1.0});
        CHECK(std::abs(d1 * a1 + p.omega12 * a2 + p.omega13 * a3) < 1e-10 * scale);
        CHECK(std::abs(p.omega21() * a1 + d2 * a2 + w20) < 1e-10 * scale);
        CHECK(std::abs(p.omega31() * a1 + d3 * a3 + w30) < 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("on-resonance amplitudes at band center have closed forms") {
  // kappa02=kappa03=200, omega12=5, omega13=20, gamma1=0.02, gamma2=gamma3=2:
  // at eta=0 the determinant is purely imaginary, Delta = -425.01i, so for a
  // real drive w20 = 1/sqrt(2) the amplitudes are (up to that drive):
  //   a1 = -(5/425.01) * w20           (real)
  //   a2 = +(400.01/425.01) * w20 * i  (imaginary)
  //   a3 = -(100/425.01) * w20 * i     (imaginary)
  const MediumParams p = lambdafwm::figures::onresonance_medium();
  const double w = 1.0 / std::sqrt(2.0);
  const auto [a1, a2, a3] = lambdafwm::atomic_amplitudes(p, 0.0, {w, 0.0}, {0.0, 0.0});
  CHECK(a1.real() == doctest::Approx(-5.0 * w / 425.01).epsilon(1e-12));
  CHECK(std::abs(a1.imag()) < 1e-15);
  CHECK(a2.imag() == doctest::Approx(400.01 * w / 425.01).epsilon(1e-12));
  CHECK(std::abs(a2.real()) < 1e-15);
  CHECK(a3.imag() == doctest::Approx(-100.0 * w / 425.01).epsilon(1e-12));
  CHECK(std::abs(a3.real()) < 1e-15);
}

TEST_CASE("a lossless medium exposes the pole guard") {
  // With all widths and detunings zero, Delta(eta) = eta^3 - 2*eta for unit
  // couplings: a genuine pole sits at eta = sqrt(2).
  MediumParams p;
  p.omega12 = 1.0;
  p.omega13 = 1.0;
  p.kappa02 = 1.0;
  p.kappa03 = 1.0;
  const double pole = std::sqrt(2.0);
  CHECK_THROWS_AS(lambdafwm::spectral_response(p, pole), lambdafwm::SingularResponse);
  CHECK_THROWS_AS(lambdafwm::atomic_amplitudes(p, pole, {1.0, 0.0}, {0.0, 0.0}),
                  lambdafwm::SingularResponse);
  try {
    lambdafwm::spectral_response(p, pole);
  } catch (const lambdafwm::SingularResponse& e) {
    CHECK(e.eta == doctest::Approx(pole));
    CHECK(e.abs_delta <= lambdafwm::kEpsSingular);
  }
  // Slightly off the pole the response is finite again.
  CHECK_NOTHROW(lambdafwm::spectral_response(p, pole + 1e-3));
}

TEST_CASE("evaluation is deterministic") {
  const MediumParams p = complex_coupling_medium();
  const lambdafwm::SpectralResponse r1 = lambdafwm::spectral_response(p, 1.1);
  const lambdafwm::SpectralResponse r2 = lambdafwm::spectral_response(p, 1.1);
  CHECK(r1.delta_det == r2.delta_det);
  CHECK(r1.k2 == r2.k2);
  CHECK(r1.k3 == r2.k3);
  CHECK(r1.s2 == r2.s2);
  CHECK(r1.s3 == r2.s3);
  CHECK(r1.lambda_big == r2.lambda_big);
}

}  // TEST_SUITE
