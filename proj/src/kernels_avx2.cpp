// AVX2 variants of the trainer kernels. Compiled with -mavx2 only; entered
// through the dispatch table after a runtime CPU check. Arithmetic mirrors
// the scalar reference exactly: same 4-lane accumulation order, mul+add
// (no FMA), IEEE sqrt/div, so results are bit-identical to scalar.

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace geopeg::kern::avx2 {

bool supported() { return __builtin_cpu_supports("avx2"); }

double dot(const double* a, const double* b, size_t n) {
  __m256d accv = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    accv = _mm256_add_pd(accv, _mm256_mul_pd(va, vb));
  }
  alignas(32) double acc[4];
  _mm256_store_pd(acc, accv);
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
    __m256d vg = _mm256_set1_pd(g[r]);
    size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      __m256d acc = _mm256_loadu_pd(gx + c);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(vg, _mm256_loadu_pd(row + c)));
      _mm256_storeu_pd(gx + c, acc);
    }
    for (; c < cols; ++c) gx[c] += g[r] * row[c];
  }
}

void ger_acc(double* Wg, const double* g, const double* x,
             size_t rows, size_t cols) {
  for (size_t r = 0; r < rows; ++r) {
    double* row = Wg + r * cols;
    __m256d vg = _mm256_set1_pd(g[r]);
    size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      __m256d acc = _mm256_loadu_pd(row + c);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(vg, _mm256_loadu_pd(x + c)));
      _mm256_storeu_pd(row + c, acc);
    }
    for (; c < cols; ++c) row[c] += g[r] * x[c];
  }
}

void axpy(double a, const double* x, double* y, size_t n) {
  __m256d va = _mm256_set1_pd(a);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_loadu_pd(y + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, acc);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, size_t n) {
  __m256d va = _mm256_set1_pd(a);
  size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void relu(const double* x, double* y, size_t n) {
  __m256d zero = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_max_pd(zero, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_grad_acc(const double* x, const double* gy, double* gx, size_t n) {
  __m256d zero = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(x + i), zero, _CMP_GT_OQ);
    __m256d pass = _mm256_and_pd(mask, _mm256_loadu_pd(gy + i));
    _mm256_storeu_pd(gx + i, _mm256_add_pd(_mm256_loadu_pd(gx + i), pass));
  }
  for (; i < n; ++i)
    if (x[i] > 0.0) gx[i] += gy[i];
}

void adam_step(double* p, double* m, double* v, const double* g, size_t n,
               double lr, double beta1, double beta2, double eps,
               double c1, double c2) {
  __m256d vb1 = _mm256_set1_pd(beta1), vomb1 = _mm256_set1_pd(1.0 - beta1);
  __m256d vb2 = _mm256_set1_pd(beta2), vomb2 = _mm256_set1_pd(1.0 - beta2);
  __m256d vlr = _mm256_set1_pd(lr), veps = _mm256_set1_pd(eps);
  __m256d vc1 = _mm256_set1_pd(c1), vc2 = _mm256_set1_pd(c2);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vg = _mm256_loadu_pd(g + i);
    __m256d vm = _mm256_add_pd(_mm256_mul_pd(vb1, _mm256_loadu_pd(m + i)),
                               _mm256_mul_pd(vomb1, vg));
    __m256d vv = _mm256_add_pd(_mm256_mul_pd(vb2, _mm256_loadu_pd(v + i)),
                               _mm256_mul_pd(vomb2, _mm256_mul_pd(vg, vg)));
    _mm256_storeu_pd(m + i, vm);
    _mm256_storeu_pd(v + i, vv);
    __m256d num = _mm256_mul_pd(vlr, _mm256_mul_pd(vm, vc1));
    __m256d den = _mm256_add_pd(_mm256_sqrt_pd(_mm256_mul_pd(vv, vc2)), veps);
    __m256d vp = _mm256_sub_pd(_mm256_loadu_pd(p + i), _mm256_div_pd(num, den));
    _mm256_storeu_pd(p + i, vp);
  }
  for (; i < n; ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * (g[i] * g[i]);
    p[i] -= lr * (m[i] * c1) / (std::sqrt(v[i] * c2) + eps);
  }
}

}  // namespace geopeg::kern::avx2
