#include "echosculpt/kernels.hpp"

namespace echosculpt::kernels {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void col_dots_minus_scalar(const double* a, std::size_t lda, std::size_t rows,
                           std::size_t cols, const double* y, const double* c,
                           double* out) {
    for (std::size_t j = 0; j < cols; ++j)
        out[j] = c[j] - dot_scalar(a + j * lda, y, rows);
}

}  // namespace

const Kernels& scalar_table() {
    static const Kernels k{dot_scalar, axpy_scalar, col_dots_minus_scalar};
    return k;
}

}  // namespace echosculpt::kernels
