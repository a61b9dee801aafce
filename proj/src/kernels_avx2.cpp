#include <immintrin.h>

#include <cmath>
#include <complex>

#include "lambdafwm/kernels.hpp"

namespace lambdafwm::kernels::detail {

namespace {

// unpacklo/unpackhi on two packed-complex loads produce the element order
// (0, 2, 1, 3); the rotor lanes are initialized in the same order so lane j
// always carries the phase of the element it multiplies.
inline void load_rotor(__m256d& rre, __m256d& rim, double theta, double dtheta) {
  const double p0 = theta;
  const double p1 = theta + 2.0 * dtheta;
  const double p2 = theta + dtheta;
  const double p3 = theta + 3.0 * dtheta;
  rre = _mm256_set_pd(std::cos(p3), std::cos(p2), std::cos(p1), std::cos(p0));
  rim = _mm256_set_pd(std::sin(p3), std::sin(p2), std::sin(p1), std::sin(p0));
}

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

std::complex<double> weighted_phase_sum_avx2(const std::complex<double>* w,
                                             std::size_t n, double theta0,
                                             double dtheta) {
  const auto* p = reinterpret_cast<const double*>(w);
  const std::size_t blocks = n / 4;

  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  __m256d rre = _mm256_setzero_pd();
  __m256d rim = _mm256_setzero_pd();
  const __m256d step_c = _mm256_set1_pd(std::cos(4.0 * dtheta));
  const __m256d step_s = _mm256_set1_pd(std::sin(4.0 * dtheta));

  for (std::size_t b = 0; b < blocks; ++b) {
    if ((b & 63u) == 0u) {
      load_rotor(rre, rim, theta0 + dtheta * static_cast<double>(4 * b), dtheta);
    }
    const __m256d lo = _mm256_loadu_pd(p + 8 * b);      // w0.re w0.im w1.re w1.im
    const __m256d hi = _mm256_loadu_pd(p + 8 * b + 4);  // w2.re w2.im w3.re w3.im
    const __m256d wre = _mm256_unpacklo_pd(lo, hi);
    const __m256d wim = _mm256_unpackhi_pd(lo, hi);

    acc_re = _mm256_fmadd_pd(wre, rre, acc_re);
    acc_re = _mm256_fnmadd_pd(wim, rim, acc_re);
    acc_im = _mm256_fmadd_pd(wre, rim, acc_im);
    acc_im = _mm256_fmadd_pd(wim, rre, acc_im);

    const __m256d next_re = _mm256_fmsub_pd(rre, step_c, _mm256_mul_pd(rim, step_s));
    const __m256d next_im = _mm256_fmadd_pd(rre, step_s, _mm256_mul_pd(rim, step_c));
    rre = next_re;
    rim = next_im;
  }

  std::complex<double> acc{hsum(acc_re), hsum(acc_im)};
  for (std::size_t j = 4 * blocks; j < n; ++j) {
    acc += w[j] * std::polar(1.0, theta0 + dtheta * static_cast<double>(j));
  }
  return acc;
}

double weighted_abs2_sum_avx2(const std::complex<double>* w, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(w);
  const std::size_t pairs = n / 2;  // one __m256d covers two complex values

  __m256d acc = _mm256_setzero_pd();
  for (std::size_t b = 0; b < pairs; ++b) {
    const __m256d v = _mm256_loadu_pd(p + 4 * b);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double sum = hsum(acc);
  for (std::size_t j = 2 * pairs; j < n; ++j) {
    sum += w[j].real() * w[j].real() + w[j].imag() * w[j].imag();
  }
  return sum;
}

}  // namespace lambdafwm::kernels::detail
