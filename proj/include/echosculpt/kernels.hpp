#pragma once

#include <cstddef>
#include <string_view>

#ifndef ECHOSCULPT_HAVE_AVX2
#define ECHOSCULPT_HAVE_AVX2 0
#endif

// Dense inner-loop kernels used by the simplex core. A scalar reference
// implementation always exists; on x86 an AVX2+FMA variant is selected at
// runtime when the CPU supports it. The two are equivalence-tested; SIMD
// reductions may differ from scalar ones in the last few ulps because the
// summation order differs.

namespace echosculpt::kernels {

enum class Backend { scalar, avx2 };

struct Kernels {
    // sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // out[j] = c[j] - sum_i y[i] * a[j*lda + i]   (column-major sweep)
    void (*col_dots_minus)(const double* a, std::size_t lda, std::size_t rows,
                           std::size_t cols, const double* y, const double* c,
                           double* out);
};

const Kernels& scalar_table();
#if ECHOSCULPT_HAVE_AVX2
const Kernels& avx2_table();
#endif

bool backend_supported(Backend b);
Backend detect_backend();

// Process-wide selection. Defaults to detect_backend() on first use.
Backend active_backend();
void set_backend(Backend b);  // throws std::runtime_error if unsupported

const Kernels& active();
std::string_view backend_name(Backend b);

}  // namespace echosculpt::kernels
