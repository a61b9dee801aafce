#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace lambdafwm::kernels {

/// Computational backend for the array kernels. Auto resolves to the widest
/// instruction set the CPU supports; the environment variable LAMBDA_FWM_SIMD
/// (scalar|avx2|auto) overrides the initial choice.
enum class Backend { Auto, Scalar, Avx2 };

/// Select the backend programmatically (tests use this to compare variants).
/// Throws lambdafwm::ConfigError if the requested backend is unsupported here.
void set_backend(Backend backend);

/// Currently active backend after resolution (never Auto).
Backend active_backend();
std::string backend_name(Backend backend);

/// True when the running CPU supports the AVX2+FMA variants.
bool avx2_supported();

/// Sum of w[j] * exp(i*(theta0 + j*dtheta)) over j in [0, n).
/// This is the hot loop of the discrete Fourier sums: one call evaluates one
/// output sample of a forward or inverse transform.
std::complex<double> weighted_phase_sum(const std::complex<double>* w, std::size_t n,
                                        double theta0, double dtheta);

/// Sum of |w[j]|^2 over j in [0, n).
double weighted_abs2_sum(const std::complex<double>* w, std::size_t n);

namespace detail {
// Per-backend entry points, exposed for equivalence tests.
std::complex<double> weighted_phase_sum_scalar(const std::complex<double>* w,
                                               std::size_t n, double theta0,
                                               double dtheta);
double weighted_abs2_sum_scalar(const std::complex<double>* w, std::size_t n);
#if defined(FWM_HAVE_AVX2)
std::complex<double> weighted_phase_sum_avx2(const std::complex<double>* w,
                                             std::size_t n, double theta0,
                                             double dtheta);
double weighted_abs2_sum_avx2(const std::complex<double>* w, std::size_t n);
#endif
}  // namespace detail

}  // namespace lambdafwm::kernels
