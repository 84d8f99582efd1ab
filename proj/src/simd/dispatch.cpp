#include "mq/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace mq::simd {

bool avx2_available() {
#if defined(MQ_BUILD_AVX2) && (defined(__x86_64__) || defined(_M_X64))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Kernels& active() {
    static const Kernels* chosen = [] {
        const char* env = std::getenv("MQ_SIMD");
        if (env && std::strcmp(env, "scalar") == 0)
            return &scalar_kernels();
        if (avx2_available())
            return &avx2_kernels();
        return &scalar_kernels();
    }();
    return *chosen;
}

} // namespace mq::simd
