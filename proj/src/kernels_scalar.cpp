#include <cmath>

#include "lambdafwm/kernels.hpp"

namespace lambdafwm::kernels::detail {

// Rotor recurrence with periodic resynchronization: the phase e^{i(theta0+j*dtheta)}
// advances by one complex multiply per element and is recomputed from scratch
// every 32 elements to keep the accumulated rounding below ~1e-15 relative.
std::complex<double> weighted_phase_sum_scalar(const std::complex<double>* w,
                                               std::size_t n, double theta0,
                                               double dtheta) {
  const std::complex<double> step = std::polar(1.0, dtheta);
  std::complex<double> acc{0.0, 0.0};
  std::complex<double> rotor{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    if ((j & 31u) == 0u) {
      rotor = std::polar(1.0, theta0 + dtheta * static_cast<double>(j));
    }
    acc += w[j] * rotor;
    rotor *= step;
  }
  return acc;
}

double weighted_abs2_sum_scalar(const std::complex<double>* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += w[j].real() * w[j].real() + w[j].imag() * w[j].imag();
  }
  return acc;
}

}  // namespace lambdafwm::kernels::detail
