#pragma once

#include <cstddef>

namespace vulnlex::kernels {

// Inner loops shared by the learned models. Each kernel has a serial
// reference implementation and an OpenMP variant; the parallel variants
// partition independent outputs only, so results are bit-identical to the
// serial reference for any thread count.

// c = a * b, row-major, a: n x k, b: k x m, c: n x m.
void matmul_serial(const double* a, const double* b, double* c, int n, int k, int m);
void matmul_parallel(const double* a, const double* b, double* c, int n, int k, int m);

// Dispatches to the parallel variant above a fixed size threshold.
void matmul(const double* a, const double* b, double* c, int n, int k, int m);

// y += x * w for a row vector x (1 x in), w: in x out. Serial; used inside
// per-sample recurrences that are themselves parallelized across samples.
void vecmat_accum(const double* x, const double* w, double* y, int in, int out);

// w += scale * x^T * y (outer product accumulate), x: 1 x in, y: 1 x out.
void outer_accum(const double* x, const double* y, double* w, int in, int out, double scale);

}  // namespace vulnlex::kernels
