#include "geopeg/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace geopeg::kern {

// ---------------------------------------------------------------------------
// Scalar reference kernels.
//
// dot/gemv accumulate into four lanes in a fixed order so the AVX2 variants
// can reproduce the result bit for bit; the tail reuses the low lanes.
// ---------------------------------------------------------------------------
namespace scalar {

double dot(const double* a, const double* b, size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc[0] += a[i] * b[i];
    acc[1] += a[i + 1] * b[i + 1];
    acc[2] += a[i + 2] * b[i + 2];
    acc[3] += a[i + 3] * b[i + 3];
  }
  for (size_t l = 0; i < n; ++i, ++l) acc[l] += a[i] * b[i];
  return ((acc[0] + acc[1]) + acc[2]) + acc[3];
}

void gemv(const double* W, const double* x, const double* b, double* y,
          size_t rows, size_t cols) {
  for (size_t r = 0; r < rows; ++r) {
    double s = dot(W + r * cols, x, cols);
    y[r] = b ? s + b[r] : s;
  }
}

void gemv_t_acc(const double* W, const double* g, double* gx,
                size_t rows, size_t cols) {
  for (size_t r = 0; r < rows; ++r) {
    const double* row = W + r * cols;
    double gr = g[r];
    for (size_t c = 0; c < cols; ++c) gx[c] += gr * row[c];
  }
}

void ger_acc(double* Wg, const double* g, const double* x,
             size_t rows, size_t cols) {
  for (size_t r = 0; r < rows; ++r) {
    double gr = g[r];
    double* row = Wg + r * cols;
    for (size_t c = 0; c < cols; ++c) row[c] += gr * x[c];
  }
}

void axpy(double a, const double* x, double* y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, size_t n) {
  for (size_t i = 0; i < n; ++i) x[i] *= a;
}

void relu(const double* x, double* y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_grad_acc(const double* x, const double* gy, double* gx, size_t n) {
  for (size_t i = 0; i < n; ++i)
    if (x[i] > 0.0) gx[i] += gy[i];
}

void adam_step(double* p, double* m, double* v, const double* g, size_t n,
               double lr, double beta1, double beta2, double eps,
               double c1, double c2) {
  for (size_t i = 0; i < n; ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * (g[i] * g[i]);
    p[i] -= lr * (m[i] * c1) / (std::sqrt(v[i] * c2) + eps);
  }
}

}  // namespace scalar

#if GEOPEG_HAVE_AVX2
namespace avx2 {
double dot(const double* a, const double* b, size_t n);
void gemv(const double* W, const double* x, const double* b, double* y,
          size_t rows, size_t cols);
void gemv_t_acc(const double* W, const double* g, double* gx,
                size_t rows, size_t cols);
void ger_acc(double* Wg, const double* g, const double* x,
             size_t rows, size_t cols);
void axpy(double a, const double* x, double* y, size_t n);
void scale(double a, double* x, size_t n);
void relu(const double* x, double* y, size_t n);
void relu_grad_acc(const double* x, const double* gy, double* gx, size_t n);
void adam_step(double* p, double* m, double* v, const double* g, size_t n,
               double lr, double beta1, double beta2, double eps,
               double c1, double c2);
bool supported();
}  // namespace avx2
#endif

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------
namespace {

struct Table {
  double (*dot)(const double*, const double*, size_t);
  void (*gemv)(const double*, const double*, const double*, double*, size_t, size_t);
  void (*gemv_t_acc)(const double*, const double*, double*, size_t, size_t);
  void (*ger_acc)(double*, const double*, const double*, size_t, size_t);
  void (*axpy)(double, const double*, double*, size_t);
  void (*scale)(double, double*, size_t);
  void (*relu)(const double*, double*, size_t);
  void (*relu_grad_acc)(const double*, const double*, double*, size_t);
  void (*adam_step)(double*, double*, double*, const double*, size_t,
                    double, double, double, double, double, double);
};

constexpr Table kScalar = {
    scalar::dot,  scalar::gemv,  scalar::gemv_t_acc, scalar::ger_acc,
    scalar::axpy, scalar::scale, scalar::relu,       scalar::relu_grad_acc,
    scalar::adam_step};

#if GEOPEG_HAVE_AVX2
constexpr Table kAvx2 = {
    avx2::dot,  avx2::gemv,  avx2::gemv_t_acc, avx2::ger_acc,
    avx2::axpy, avx2::scale, avx2::relu,       avx2::relu_grad_acc,
    avx2::adam_step};
#endif

Isa pick_isa() {
#if GEOPEG_HAVE_AVX2
  Isa isa = avx2::supported() ? Isa::Avx2 : Isa::Scalar;
#else
  Isa isa = Isa::Scalar;
#endif
  if (const char* env = std::getenv("GEOPEG_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) isa = Isa::Scalar;
#if GEOPEG_HAVE_AVX2
    if (std::strcmp(env, "avx2") == 0 && avx2::supported()) isa = Isa::Avx2;
#endif
  }
  return isa;
}

Isa g_isa = pick_isa();

const Table& table() {
#if GEOPEG_HAVE_AVX2
  if (g_isa == Isa::Avx2) return kAvx2;
#endif
  return kScalar;
}

}  // namespace

Isa active_isa() { return g_isa; }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void force_isa(Isa isa) {
#if GEOPEG_HAVE_AVX2
  if (isa == Isa::Avx2 && !avx2::supported()) isa = Isa::Scalar;
#else
  isa = Isa::Scalar;
#endif
  g_isa = isa;
}

double dot(const double* a, const double* b, size_t n) { return table().dot(a, b, n); }

void gemv(const double* W, const double* x, const double* b, double* y,
          size_t rows, size_t cols) {
  table().gemv(W, x, b, y, rows, cols);
}

void gemv_t_acc(const double* W, const double* g, double* gx,
                size_t rows, size_t cols) {
  table().gemv_t_acc(W, g, gx, rows, cols);
}

void ger_acc(double* Wg, const double* g, const double* x,
             size_t rows, size_t cols) {
  table().ger_acc(Wg, g, x, rows, cols);
}

void axpy(double a, const double* x, double* y, size_t n) { table().axpy(a, x, y, n); }

void scale(double a, double* x, size_t n) { table().scale(a, x, n); }

void relu(const double* x, double* y, size_t n) { table().relu(x, y, n); }

void relu_grad_acc(const double* x, const double* gy, double* gx, size_t n) {
  table().relu_grad_acc(x, gy, gx, n);
}

void adam_step(double* p, double* m, double* v, const double* g, size_t n,
               double lr, double beta1, double beta2, double eps,
               double c1, double c2) {
  table().adam_step(p, m, v, g, n, lr, beta1, beta2, eps, c1, c2);
}

}  // namespace geopeg::kern
