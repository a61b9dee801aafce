#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "lambdafwm/errors.hpp"
#include "lambdafwm/kernels.hpp"

namespace {

using Complex = std::complex<double>;
using CLD = std::complex<long double>;
namespace kernels = lambdafwm::kernels;

// Per-term extended-precision reference; no rotor recurrence, so it shares no
// failure mode with the kernels under test.
CLD reference_phase_sum(const std::vector<Complex>& w, double theta0, double dtheta) {
  CLD acc{0.0L, 0.0L};
  for (std::size_t j = 0; j < w.size(); ++j) {
    const long double th =
        static_cast<long double>(theta0) + static_cast<long double>(dtheta) * j;
    acc += CLD{w[j].real(), w[j].imag()} * CLD{cosl(th), sinl(th)};
  }
  return acc;
}

long double reference_abs2_sum(const std::vector<Complex>& w) {
  long double acc = 0.0L;
  for (const Complex& v : w) {
    acc += static_cast<long double>(v.real()) * v.real() +
           static_cast<long double>(v.imag()) * v.imag();
  }
  return acc;
}

std::vector<Complex> random_weights(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Complex> w(n);
  for (Complex& v : w) v = {dist(rng), dist(rng)};
  return w;
}

double weight_scale(const std::vector<Complex>& w) {
  double s = 0.0;
  for (const Complex& v : w) s += std::abs(v);
  return std::max(s, 1.0);
}

// Restores the backend even when a CHECK fails mid-case.
struct BackendGuard {
  ~BackendGuard() { kernels::set_backend(kernels::Backend::Auto); }
};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("phase sum matches an extended-precision reference") {
  const std::size_t sizes[] = {1, 2, 3, 5, 8, 9, 17, 64, 1000, 4099};
  const double theta0s[] = {0.0, 1.234, -2.5};
  const double dthetas[] = {0.001, 0.7853981633974483, 3.1};
  std::uint64_t seed = 11;
  for (std::size_t n : sizes) {
    const std::vector<Complex> w = random_weights(n, seed++);
    for (double theta0 : theta0s) {
      for (double dtheta : dthetas) {
        CAPTURE(n);
        CAPTURE(theta0);
        CAPTURE(dtheta);
        const Complex got = kernels::weighted_phase_sum(w.data(), n, theta0, dtheta);
        const CLD want = reference_phase_sum(w, theta0, dtheta);
        const double dev = std::abs(CLD{got.real(), got.imag()} - want);
        CHECK(dev <= 1e-12 * weight_scale(w));
      }
    }
  }
}

TEST_CASE("rotor recurrence does not drift over long sums") {
  const std::size_t n = 200000;
  const std::vector<Complex> w(n, Complex{1.0, 0.0});
  const Complex got = kernels::weighted_phase_sum(w.data(), n, 0.2, 0.37);
  const CLD want = reference_phase_sum(w, 0.2, 0.37);
  CHECK(std::abs(CLD{got.real(), got.imag()} - want) < 1e-8);
}

TEST_CASE("squared-magnitude sum matches an extended-precision reference") {
  for (std::size_t n : {1u, 7u, 64u, 4097u}) {
    const std::vector<Complex> w = random_weights(n, 100 + n);
    const double got = kernels::weighted_abs2_sum(w.data(), n);
    const long double want = reference_abs2_sum(w);
    CHECK(std::abs(static_cast<long double>(got) - want) <=
          1e-13L * std::max(want, 1.0L));
  }
}

TEST_CASE("zero-length sums are zero") {
  CHECK(kernels::weighted_phase_sum(nullptr, 0, 1.0, 2.0) == Complex{0.0, 0.0});
  CHECK(kernels::weighted_abs2_sum(nullptr, 0) == 0.0);
}

TEST_CASE("vector variants agree with the scalar reference kernels") {
  if (!kernels::avx2_supported()) return;
#if defined(FWM_HAVE_AVX2)
  const std::size_t sizes[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 15, 16, 17, 256, 4097};
  std::uint64_t seed = 1000;
  for (std::size_t n : sizes) {
    const std::vector<Complex> w = random_weights(n, seed++);
    CAPTURE(n);
    const Complex s = kernels::detail::weighted_phase_sum_scalar(w.data(), n, 0.4, 0.21);
    const Complex v = kernels::detail::weighted_phase_sum_avx2(w.data(), n, 0.4, 0.21);
    CHECK(std::abs(s - v) <= 1e-13 * weight_scale(w));
    const double sa = kernels::detail::weighted_abs2_sum_scalar(w.data(), n);
    const double va = kernels::detail::weighted_abs2_sum_avx2(w.data(), n);
    CHECK(std::abs(sa - va) <= 1e-13 * std::max(sa, 1.0));
  }
#endif
}

TEST_CASE("backend selection is explicit and reversible") {
  BackendGuard guard;

  kernels::set_backend(kernels::Backend::Scalar);
  CHECK(kernels::active_backend() == kernels::Backend::Scalar);
  CHECK(kernels::backend_name(kernels::active_backend()) == "scalar");

  if (kernels::avx2_supported()) {
    kernels::set_backend(kernels::Backend::Avx2);
    CHECK(kernels::active_backend() == kernels::Backend::Avx2);
    CHECK(kernels::backend_name(kernels::active_backend()) == "avx2");
  } else {
    CHECK_THROWS_AS(kernels::set_backend(kernels::Backend::Avx2),
                    lambdafwm::ConfigError);
  }

  kernels::set_backend(kernels::Backend::Auto);
  const kernels::Backend resolved = kernels::active_backend();
  CHECK(resolved != kernels::Backend::Auto);
}

TEST_CASE("public entry point dispatches to the pinned backend") {
  BackendGuard guard;
  const std::vector<Complex> w = random_weights(513, 42);

  kernels::set_backend(kernels::Backend::Scalar);
  const Complex via_public =
      kernels::weighted_phase_sum(w.data(), w.size(), 0.3, 0.011);
  const Complex direct =
      kernels::detail::weighted_phase_sum_scalar(w.data(), w.size(), 0.3, 0.011);
  CHECK(via_public == direct);
}

}  // TEST_SUITE
