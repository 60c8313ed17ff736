#pragma once

#include <cstddef>

// Data-parallel inner loops of the network engine. Scalar reference kernels
// are always available; on x86-64 with AVX2+FMA the dispatch table is filled
// with vector variants at startup. Both variants are compiled into the
// library and equivalence-tested against each other, so the selected backend
// can be overridden at any time (useful for tests and for reproducing runs
// on machines without AVX2).

namespace agarl::kernels {

enum class Backend { scalar, avx2 };

/// Dot product of a and b, length n.
extern double (*dot)(const double* a, const double* b, std::size_t n);

/// y[i] += alpha * x[i].
extern void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

/// dst[i] = tau * src[i] + (1 - tau) * dst[i].
extern void (*lerp)(double tau, const double* src, double* dst, std::size_t n);

/// Elementwise Adam update with precomputed bias corrections:
///   m = b1*m + (1-b1)*g;  v = b2*v + (1-b2)*g^2
///   p -= lr * (m/bc1) / (sqrt(v/bc2) + eps)
extern void (*adam_elem)(double* p, const double* g, double* m, double* v, std::size_t n,
                         double lr, double b1, double b2, double eps, double bc1, double bc2);

// Scalar reference implementations (the ground truth for equivalence tests).
double dot_ref(const double* a, const double* b, std::size_t n);
void axpy_ref(double alpha, const double* x, double* y, std::size_t n);
void lerp_ref(double tau, const double* src, double* dst, std::size_t n);
void adam_elem_ref(double* p, const double* g, double* m, double* v, std::size_t n,
                   double lr, double b1, double b2, double eps, double bc1, double bc2);

#if defined(__x86_64__)
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void lerp_avx2(double tau, const double* src, double* dst, std::size_t n);
void adam_elem_avx2(double* p, const double* g, double* m, double* v, std::size_t n,
                    double lr, double b1, double b2, double eps, double bc1, double bc2);
#endif

/// True when the running CPU can execute the AVX2 variants.
bool avx2_supported();

Backend active_backend();

/// Points the dispatch table at the requested backend. Selecting avx2 on a
/// CPU without support throws agarl::unsupported_error.
void select_backend(Backend b);

}  // namespace agarl::kernels
