#include "zenolink/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace zenolink::kernels {

namespace {

const Table* select() {
    const char* want = std::getenv("ZENOLINK_SIMD");
    if (want != nullptr && std::strcmp(want, "scalar") == 0) return &scalar_table();
#if defined(ZENOLINK_HAVE_AVX2_TU)
    const bool cpu_ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    if (want != nullptr && std::strcmp(want, "avx2") == 0 && cpu_ok) return &avx2_table();
    if ((want == nullptr || std::strcmp(want, "auto") == 0) && cpu_ok) return &avx2_table();
#endif
#if defined(ZENOLINK_HAVE_NEON_TU)
    if (want == nullptr || std::strcmp(want, "auto") == 0 ||
        std::strcmp(want, "neon") == 0)
        return &neon_table();
#endif
    return &scalar_table();
}

} // namespace

const Table& active_table() {
    static const Table* t = select();
    return *t;
}

std::vector<const Table*> all_tables() {
    std::vector<const Table*> ts{&scalar_table()};
#if defined(ZENOLINK_HAVE_AVX2_TU)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        ts.push_back(&avx2_table());
#endif
#if defined(ZENOLINK_HAVE_NEON_TU)
    ts.push_back(&neon_table());
#endif
    return ts;
}

} // namespace zenolink::kernels
