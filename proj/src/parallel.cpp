#include "echosculpt/parallel.hpp"

#include <cstdlib>
#include <string>

namespace echosculpt {

int worker_count() {
    static const int count = [] {
        int n = static_cast<int>(std::thread::hardware_concurrency());
        if (n < 1) n = 1;
        if (const char* env = std::getenv("ECHO_SCULPT_THREADS")) {
            try {
                const int cap = std::stoi(env);
                if (cap >= 1) n = std::min(n, cap);
            } catch (const std::exception&) {
            }
        }
        return std::min(n, 256);
    }();
    return count;
}

}  // namespace echosculpt
