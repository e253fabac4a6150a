#include <chrono>
#include <cstdio>
#include <vector>

#include "vulnlex/bilstm.hpp"
#include "vulnlex/kernels.hpp"
#include "vulnlex/matrix.hpp"
#include "vulnlex/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace vulnlex;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

Matrix random_matrix(int rows, int cols, Rng& rng) {
    Matrix m(rows, cols);
    for (double& v : m.values()) v = rng.uniform(-1.0, 1.0);
    return m;
}

template <typename F>
double time_best_of(int repeats, F&& body) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        double t0 = now_seconds();
        body();
        double dt = now_seconds() - t0;
        if (dt < best) best = dt;
    }
    return best;
}

void bench_matmul(int n, int k, int m, int repeats) {
    Rng rng(7, 0);
    Matrix a = random_matrix(n, k, rng);
    Matrix b = random_matrix(k, m, rng);
    Matrix c(n, m);

    double serial = time_best_of(repeats, [&] {
        kernels::matmul_serial(a.data(), b.data(), c.data(), n, k, m);
    });
    double parallel = time_best_of(repeats, [&] {
        kernels::matmul_parallel(a.data(), b.data(), c.data(), n, k, m);
    });
    double flops = 2.0 * n * k * m;
    std::printf("matmul %4dx%4dx%4d  serial %8.3f ms (%6.2f GFLOP/s)  parallel %8.3f ms (%6.2f GFLOP/s)  speedup %.2fx\n",
                n, k, m, serial * 1e3, flops / serial * 1e-9, parallel * 1e3,
                flops / parallel * 1e-9, serial / parallel);
}

void bench_bilstm_batch(int batch, int seq_len, int dim, int hidden, int layers, int repeats) {
    Rng rng(11, 0);
    BiLstmNetwork net = make_bilstm(dim, hidden, layers, 0.0, 11);
    std::vector<EmbeddedSequence> batch_seqs;
    for (int i = 0; i < batch; ++i) {
        EmbeddedSequence seq;
        seq.rows = random_matrix(seq_len, dim, rng);
        seq.valid_length = seq_len;
        batch_seqs.push_back(std::move(seq));
    }

    auto run = [&](bool parallel) {
        std::vector<double> scores(batch_seqs.size());
#ifdef _OPENMP
        int threads = parallel ? omp_get_max_threads() : 1;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#else
        (void)parallel;
#endif
        for (std::size_t i = 0; i < batch_seqs.size(); ++i) {
            scores[i] = forward_infer(net, batch_seqs[i]);
        }
        return scores;
    };

    std::vector<double> serial_scores;
    std::vector<double> parallel_scores;
    double serial = time_best_of(repeats, [&] { serial_scores = run(false); });
    double parallel = time_best_of(repeats, [&] { parallel_scores = run(true); });
    bool identical = serial_scores == parallel_scores;
    std::printf("bilstm batch=%d len=%d dim=%d hidden=%d layers=%d  serial %8.3f ms  parallel %8.3f ms  speedup %.2fx  scores %s\n",
                batch, seq_len, dim, hidden, layers, serial * 1e3, parallel * 1e3,
                serial / parallel, identical ? "identical" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel variants run serially\n");
#endif
    bench_matmul(64, 64, 64, 5);
    bench_matmul(256, 256, 256, 5);
    bench_matmul(512, 300, 512, 3);
    bench_matmul(200, 300, 400, 3);
    bench_bilstm_batch(64, 100, 300, 50, 3, 3);
    bench_bilstm_batch(128, 200, 300, 50, 3, 1);
    return 0;
}
