#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "vulnlex/kernels.hpp"
#include "vulnlex/matrix.hpp"
#include "vulnlex/rng.hpp"
#include "vulnlex/util.hpp"

using namespace vulnlex;

namespace {

std::vector<double> random_values(std::size_t n, Rng& rng) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-2.0, 2.0);
    return v;
}

std::vector<double> matmul_oracle(const std::vector<double>& a, const std::vector<double>& b,
                                  int n, int k, int m) {
    std::vector<double> c(static_cast<std::size_t>(n) * m, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            double acc = 0.0;
            for (int p = 0; p < k; ++p) {
                acc += a[static_cast<std::size_t>(i) * k + p] * b[static_cast<std::size_t>(p) * m + j];
            }
            c[static_cast<std::size_t>(i) * m + j] = acc;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("serial matmul matches the triple-loop oracle bitwise") {
    Rng rng(21, 0);
    for (auto [n, k, m] : {std::array{1, 1, 1}, {2, 3, 4}, {5, 1, 7}, {16, 16, 16}, {33, 7, 12}}) {
        std::vector<double> a = random_values(static_cast<std::size_t>(n) * k, rng);
        std::vector<double> b = random_values(static_cast<std::size_t>(k) * m, rng);
        std::vector<double> c(static_cast<std::size_t>(n) * m);
        kernels::matmul_serial(a.data(), b.data(), c.data(), n, k, m);
        CHECK(c == matmul_oracle(a, b, n, k, m));
    }
}

TEST_CASE("parallel matmul is bit-identical to the serial reference") {
    Rng rng(22, 0);
    // Sizes straddling the parallel dispatch threshold, including odd shapes.
    for (auto [n, k, m] :
         {std::array{1, 1, 1}, {3, 5, 2}, {31, 17, 9}, {64, 64, 64}, {127, 43, 200}, {256, 64, 96}}) {
        std::vector<double> a = random_values(static_cast<std::size_t>(n) * k, rng);
        std::vector<double> b = random_values(static_cast<std::size_t>(k) * m, rng);
        std::vector<double> serial(static_cast<std::size_t>(n) * m);
        std::vector<double> parallel(static_cast<std::size_t>(n) * m);
        kernels::matmul_serial(a.data(), b.data(), serial.data(), n, k, m);
        kernels::matmul_parallel(a.data(), b.data(), parallel.data(), n, k, m);
        CHECK(serial == parallel);

        std::vector<double> dispatched(static_cast<std::size_t>(n) * m);
        kernels::matmul(a.data(), b.data(), dispatched.data(), n, k, m);
        CHECK(serial == dispatched);
    }
}

TEST_CASE("matrix-level matmul wraps the kernel and validates shapes") {
    Rng rng(23, 0);
    Matrix a(4, 3, random_values(12, rng));
    Matrix b(3, 5, random_values(15, rng));
    Matrix c = matmul(a, b);
    std::vector<double> want = matmul_oracle(a.values(), b.values(), 4, 3, 5);
    CHECK(c.values() == want);
    CHECK(c.rows() == 4);
    CHECK(c.cols() == 5);

    Matrix wrong(4, 5);
    CHECK_THROWS_AS(matmul(a, wrong), Error);
}

TEST_CASE("vecmat_accum accumulates x*W into y") {
    Rng rng(24, 0);
    int in = 7, out = 5;
    std::vector<double> x = random_values(in, rng);
    std::vector<double> w = random_values(static_cast<std::size_t>(in) * out, rng);
    std::vector<double> y = random_values(out, rng);
    std::vector<double> want = y;
    for (int j = 0; j < out; ++j) {
        for (int i = 0; i < in; ++i) want[j] += x[i] * w[static_cast<std::size_t>(i) * out + j];
    }
    kernels::vecmat_accum(x.data(), w.data(), y.data(), in, out);
    for (int j = 0; j < out; ++j) CHECK(y[j] == doctest::Approx(want[j]).epsilon(1e-15));
}

TEST_CASE("outer_accum accumulates scale * x^T y into W") {
    Rng rng(25, 0);
    int in = 6, out = 4;
    double scale = -0.75;
    std::vector<double> x = random_values(in, rng);
    std::vector<double> y = random_values(out, rng);
    std::vector<double> w = random_values(static_cast<std::size_t>(in) * out, rng);
    std::vector<double> want = w;
    for (int i = 0; i < in; ++i) {
        for (int j = 0; j < out; ++j) want[static_cast<std::size_t>(i) * out + j] += scale * x[i] * y[j];
    }
    kernels::outer_accum(x.data(), y.data(), w.data(), in, out, scale);
    CHECK(w == want);
}

TEST_CASE("matrix helpers behave") {
    Matrix m(2, 3, {1, 2, 3, 4, 5, 6});
    Matrix t = m.transposed();
    CHECK(t.rows() == 3);
    CHECK(t.cols() == 2);
    CHECK(t.at(2, 1) == 6);

    Matrix i3 = Matrix::identity(3);
    CHECK(matmul(i3, t) == t);

    Matrix sum = m;
    sum += m;
    Matrix twice = m;
    twice *= 2.0;
    CHECK(sum == twice);
    CHECK(m.all_finite());
    Matrix nanny(1, 1, {std::numeric_limits<double>::quiet_NaN()});
    CHECK_FALSE(nanny.all_finite());

    CHECK_THROWS_AS(Matrix(2, 2, {1.0}), Error);
    CHECK_THROWS_AS(sum += Matrix(3, 2), Error);
}
