#include "heatwave/simd/dispatch.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace heatwave::simd {

const Ops* avx2_ops_table(); // kernels_avx2.cpp (null when not compiled in)

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend initial_backend() {
    if (const char* env = std::getenv("HEATWAVE_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_ops_table() && cpu_has_avx2())
            return Backend::avx2;
        return Backend::scalar;
    }
    return (avx2_ops_table() && cpu_has_avx2()) ? Backend::avx2 : Backend::scalar;
}

std::atomic<const Ops*>& active_slot() {
    static std::atomic<const Ops*> slot{nullptr};
    return slot;
}

} // namespace

bool avx2_available() { return avx2_ops_table() != nullptr && cpu_has_avx2(); }

const Ops& ops(Backend b) {
    if (b == Backend::scalar) return scalar_ops();
    if (!avx2_available()) throw std::invalid_argument("avx2 backend unavailable");
    return *avx2_ops_table();
}

Backend detected_backend() { return initial_backend(); }

const Ops& active() {
    const Ops* p = active_slot().load(std::memory_order_acquire);
    if (!p) {
        p = &ops(initial_backend());
        active_slot().store(p, std::memory_order_release);
    }
    return *p;
}

void set_backend(Backend b) {
    active_slot().store(&ops(b), std::memory_order_release);
}

} // namespace heatwave::simd
