// Dense inner-loop kernels used by the simulation and resampling paths.
//
// Every kernel exists in a scalar reference form (kernels::scalar) and, on
// x86-64 hardware with AVX2+FMA, in a vectorized form. The public entry
// points dispatch once, at first use, to the best instruction set the CPU
// supports. Tests pin the two variants against each other; see
// tests/test_kernels.cpp.
//
// Matrices are column-major (Eigen's default), vectors contiguous.

#pragma once

#include <cstddef>

namespace bfvar::kernels {

enum class Isa { scalar, avx2 };

/// Instruction set currently used by the dispatching entry points.
Isa active_isa();

/// Restrict dispatch to `isa` (clamped to what the CPU supports).
/// Intended for tests and benchmarking.
void force_isa(Isa isa);

/// Return to hardware autodetection.
void reset_isa();

/// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);

/// sum_i a[i]^2
double sumsq(const double* a, std::size_t n);

/// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

/// y = A x with A column-major (rows x cols); y has length rows.
void gemv_n(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y);

/// y = A^T x with A column-major (rows x cols); y has length cols.
void gemv_t(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y);

/// x^T A y with A column-major n x n.
double bilinear(const double* a, const double* x, const double* y,
                std::size_t n);

// Reference implementations. Always available, never dispatched away;
// the vectorized variants are tested for equivalence against these.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sumsq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv_n(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y);
void gemv_t(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y);
double bilinear(const double* a, const double* x, const double* y,
                std::size_t n);
}  // namespace scalar

#ifdef BFVAR_HAVE_AVX2
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sumsq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv_n(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y);
void gemv_t(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y);
double bilinear(const double* a, const double* x, const double* y,
                std::size_t n);
}  // namespace avx2
#endif

}  // namespace bfvar::kernels
