#include "vulnlex/kernels.hpp"

#include <cstdint>

namespace vulnlex::kernels {

namespace {

// One output row of c = a * b. Accumulation runs in fixed k order so the
// parallel and serial paths produce identical bits.
inline void matmul_row(const double* a, const double* b, double* c, int i, int k, int m) {
    const double* arow = a + static_cast<std::size_t>(i) * k;
    double* crow = c + static_cast<std::size_t>(i) * m;
    for (int j = 0; j < m; ++j) crow[j] = 0.0;
    for (int p = 0; p < k; ++p) {
        double av = arow[p];
        const double* brow = b + static_cast<std::size_t>(p) * m;
        for (int j = 0; j < m; ++j) crow[j] += av * brow[j];
    }
}

}  // namespace

void matmul_serial(const double* a, const double* b, double* c, int n, int k, int m) {
    for (int i = 0; i < n; ++i) matmul_row(a, b, c, i, k, m);
}

void matmul_parallel(const double* a, const double* b, double* c, int n, int k, int m) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) matmul_row(a, b, c, i, k, m);
}

void matmul(const double* a, const double* b, double* c, int n, int k, int m) {
    std::uint64_t work = static_cast<std::uint64_t>(n) * k * m;
    if (work >= 1u << 16) {
        matmul_parallel(a, b, c, n, k, m);
    } else {
        matmul_serial(a, b, c, n, k, m);
    }
}

void vecmat_accum(const double* x, const double* w, double* y, int in, int out) {
    for (int p = 0; p < in; ++p) {
        double xv = x[p];
        const double* wrow = w + static_cast<std::size_t>(p) * out;
        for (int j = 0; j < out; ++j) y[j] += xv * wrow[j];
    }
}

void outer_accum(const double* x, const double* y, double* w, int in, int out, double scale) {
    for (int p = 0; p < in; ++p) {
        double xv = scale * x[p];
        double* wrow = w + static_cast<std::size_t>(p) * out;
        for (int j = 0; j < out; ++j) wrow[j] += xv * y[j];
    }
}

}  // namespace vulnlex::kernels
