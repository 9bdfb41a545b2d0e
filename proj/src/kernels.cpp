#include "bfvar/kernels.hpp"

#include <atomic>

namespace bfvar::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sumsq(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_n(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = 0.0;
  for (std::size_t j = 0; j < cols; ++j) axpy(x[j], a + j * rows, y, rows);
}

void gemv_t(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y) {
  for (std::size_t j = 0; j < cols; ++j) y[j] = dot(a + j * rows, x, rows);
}

double bilinear(const double* a, const double* x, const double* y,
                std::size_t n) {
  // x^T A y = sum_j y_j * (x . A_col_j)
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += y[j] * dot(x, a + j * n, n);
  return s;
}

}  // namespace scalar

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sumsq)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*gemv_n)(const double*, std::size_t, std::size_t, const double*,
                 double*);
  void (*gemv_t)(const double*, std::size_t, std::size_t, const double*,
                 double*);
  double (*bilinear)(const double*, const double*, const double*, std::size_t);
  Isa isa;
};

constexpr Table kScalarTable{scalar::dot,    scalar::sumsq,
                             scalar::axpy,   scalar::gemv_n,
                             scalar::gemv_t, scalar::bilinear,
                             Isa::scalar};

#ifdef BFVAR_HAVE_AVX2
constexpr Table kAvx2Table{avx2::dot,    avx2::sumsq,  avx2::axpy,
                           avx2::gemv_n, avx2::gemv_t, avx2::bilinear,
                           Isa::avx2};

bool cpu_has_avx2() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const Table* detect_table() {
#ifdef BFVAR_HAVE_AVX2
  if (cpu_has_avx2()) return &kAvx2Table;
#endif
  return &kScalarTable;
}

std::atomic<const Table*> g_table{nullptr};

const Table& table() {
  const Table* t = g_table.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = detect_table();
    g_table.store(t, std::memory_order_release);
  }
  return *t;
}

}  // namespace

Isa active_isa() { return table().isa; }

void force_isa(Isa isa) {
  const Table* t = &kScalarTable;
#ifdef BFVAR_HAVE_AVX2
  if (isa == Isa::avx2 && cpu_has_avx2()) t = &kAvx2Table;
#else
  (void)isa;
#endif
  g_table.store(t, std::memory_order_release);
}

void reset_isa() { g_table.store(detect_table(), std::memory_order_release); }

double dot(const double* a, const double* b, std::size_t n) {
  return table().dot(a, b, n);
}
double sumsq(const double* a, std::size_t n) { return table().sumsq(a, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  table().axpy(alpha, x, y, n);
}
void gemv_n(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y) {
  table().gemv_n(a, rows, cols, x, y);
}
void gemv_t(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y) {
  table().gemv_t(a, rows, cols, x, y);
}
double bilinear(const double* a, const double* x, const double* y,
                std::size_t n) {
  return table().bilinear(a, x, y, n);
}

}  // namespace bfvar::kernels
