#include "echosculpt/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace echosculpt::kernels {

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if ECHOSCULPT_HAVE_AVX2
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

Backend detect_backend() {
    return backend_supported(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

namespace {
std::atomic<int> g_backend{-1};

Backend resolve() {
    int b = g_backend.load(std::memory_order_acquire);
    if (b < 0) {
        Backend d = detect_backend();
        g_backend.store(static_cast<int>(d), std::memory_order_release);
        return d;
    }
    return static_cast<Backend>(b);
}
}  // namespace

Backend active_backend() { return resolve(); }

void set_backend(Backend b) {
    if (!backend_supported(b))
        throw std::runtime_error("kernel backend not supported on this CPU");
    g_backend.store(static_cast<int>(b), std::memory_order_release);
}

const Kernels& active() {
    switch (resolve()) {
#if ECHOSCULPT_HAVE_AVX2
        case Backend::avx2:
            return avx2_table();
#endif
        default:
            return scalar_table();
    }
}

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "unknown";
}

}  // namespace echosculpt::kernels
