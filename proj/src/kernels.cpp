#include "lambdafwm/kernels.hpp"

#include <cstdlib>

#include "lambdafwm/errors.hpp"

namespace lambdafwm::kernels {

bool avx2_supported() {
#if defined(FWM_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Backend resolve_auto() {
  if (const char* env = std::getenv("LAMBDA_FWM_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2") {
      if (!avx2_supported()) {
        throw ConfigError("LAMBDA_FWM_SIMD", "avx2 requested but not supported here");
      }
      return Backend::Avx2;
    }
    if (!v.empty() && v != "auto") {
      throw ConfigError("LAMBDA_FWM_SIMD", "expected scalar, avx2 or auto, got " + v);
    }
  }
  return avx2_supported() ? Backend::Avx2 : Backend::Scalar;
}

Backend& current() {
  static Backend backend = resolve_auto();
  return backend;
}

}  // namespace

void set_backend(Backend backend) {
  if (backend == Backend::Auto) {
    current() = avx2_supported() ? Backend::Avx2 : Backend::Scalar;
    return;
  }
  if (backend == Backend::Avx2 && !avx2_supported()) {
    throw ConfigError("kernels.backend", "avx2 not supported on this CPU/build");
  }
  current() = backend;
}

Backend active_backend() { return current(); }

std::string backend_name(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Auto: return "auto";
  }
  return "unknown";
}

std::complex<double> weighted_phase_sum(const std::complex<double>* w, std::size_t n,
                                        double theta0, double dtheta) {
#if defined(FWM_HAVE_AVX2)
  if (current() == Backend::Avx2) {
    return detail::weighted_phase_sum_avx2(w, n, theta0, dtheta);
  }
#endif
  return detail::weighted_phase_sum_scalar(w, n, theta0, dtheta);
}

double weighted_abs2_sum(const std::complex<double>* w, std::size_t n) {
#if defined(FWM_HAVE_AVX2)
  if (current() == Backend::Avx2) {
    return detail::weighted_abs2_sum_avx2(w, n);
  }
#endif
  return detail::weighted_abs2_sum_scalar(w, n);
}

}  // namespace lambdafwm::kernels
