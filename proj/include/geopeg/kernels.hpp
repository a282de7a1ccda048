#pragma once

#include <cstddef>

// Inner-loop arithmetic kernels for the trainer. Every kernel has a scalar
// reference implementation and (on x86-64) an AVX2 variant selected at
// runtime. The two are bit-identical: reductions use a fixed 4-lane
// accumulation order, multiplies and adds are never contracted into FMA, and
// transcendentals stay in scalar code. Equivalence is asserted in the test
// suite, so the dispatch choice can never change a training run.

namespace geopeg::kern {

enum class Isa { Scalar, Avx2 };

// Implementation picked at startup: AVX2 when the CPU supports it, scalar
// otherwise. Overridable with GEOPEG_KERNELS=scalar|avx2 (unsupported
// requests fall back to scalar).
Isa active_isa();
const char* isa_name(Isa isa);
void force_isa(Isa isa);  // used by the equivalence tests

// y = W x + b, W row-major rows x cols. b may be null.
void gemv(const double* W, const double* x, const double* b, double* y,
          size_t rows, size_t cols);

// gx += W^T g  (input gradient of a dense layer)
void gemv_t_acc(const double* W, const double* g, double* gx,
                size_t rows, size_t cols);

// Wg += g x^T  (rank-1 weight-gradient accumulation)
void ger_acc(double* Wg, const double* g, const double* x,
             size_t rows, size_t cols);

double dot(const double* a, const double* b, size_t n);

void axpy(double a, const double* x, double* y, size_t n);  // y += a x
void scale(double a, double* x, size_t n);                  // x *= a

void relu(const double* x, double* y, size_t n);
// gx += gy where x > 0
void relu_grad_acc(const double* x, const double* gy, double* gx, size_t n);

// Adam update with precomputed bias corrections c1 = 1/(1-b1^t), c2 = 1/(1-b2^t):
//   m = b1 m + (1-b1) g; v = b2 v + (1-b2) g^2; p -= lr * (m c1) / (sqrt(v c2) + eps)
void adam_step(double* p, double* m, double* v, const double* g, size_t n,
               double lr, double beta1, double beta2, double eps,
               double c1, double c2);

}  // namespace geopeg::kern
