#include "agarl/kernels.hpp"

#include <cmath>

#include "agarl/errors.hpp"

namespace agarl::kernels {

double dot_ref(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_ref(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void lerp_ref(double tau, const double* src, double* dst, std::size_t n) {
  const double keep = 1.0 - tau;
  for (std::size_t i = 0; i < n; ++i) dst[i] = tau * src[i] + keep * dst[i];
}

void adam_elem_ref(double* p, const double* g, double* m, double* v, std::size_t n,
                   double lr, double b1, double b2, double eps, double bc1, double bc2) {
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = b1 * m[i] + (1.0 - b1) * g[i];
    v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
    const double mhat = m[i] / bc1;
    const double vhat = v[i] / bc2;
    p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

bool avx2_supported() {
#if defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

decltype(dot) dot = dot_ref;
decltype(axpy) axpy = axpy_ref;
decltype(lerp) lerp = lerp_ref;
decltype(adam_elem) adam_elem = adam_elem_ref;

namespace {
Backend g_backend = Backend::scalar;

struct AutoSelect {
  AutoSelect() {
    if (avx2_supported()) select_backend(Backend::avx2);
  }
};
const AutoSelect auto_select [[maybe_unused]];
}  // namespace

Backend active_backend() { return g_backend; }

void select_backend(Backend b) {
  switch (b) {
    case Backend::scalar:
      dot = dot_ref;
      axpy = axpy_ref;
      lerp = lerp_ref;
      adam_elem = adam_elem_ref;
      break;
    case Backend::avx2:
#if defined(__x86_64__)
      if (!avx2_supported()) throw unsupported_error("avx2 backend requested on a CPU without AVX2/FMA");
      dot = dot_avx2;
      axpy = axpy_avx2;
      lerp = lerp_avx2;
      adam_elem = adam_elem_avx2;
      break;
#else
      throw unsupported_error("avx2 backend is only built on x86-64");
#endif
  }
  g_backend = b;
}

}  // namespace agarl::kernels
