#pragma once

// Runtime backend selection. The scalar table is always available; the AVX2
// table is compiled in a TU of its own (with the matching -m flags) and only
// dereferenced after a CPUID check. HEATWAVE_SIMD=scalar|avx2 overrides.

#include <cstddef>
#include <cstdint>

namespace heatwave::simd {

enum class Backend { scalar, avx2 };

struct Ops {
    Backend backend;
    const char* name;
    void (*exp_batch)(const double* x, double* out, std::size_t n);
    void (*log_batch)(const double* x, double* out, std::size_t n);
    void (*normal_icdf_batch)(const double* u, double* out, std::size_t n);
    // normals for lattice cells (step, j0 .. j0+n-1) of stream (seed, stream)
    void (*cell_normals)(std::uint64_t seed, std::uint32_t stream, std::uint32_t step,
                         std::uint32_t j0, double* out, std::size_t n);
    // raw Philox block, exposed for known-answer tests
    void (*philox_block)(const std::uint32_t ctr[4], const std::uint32_t key[2],
                         std::uint32_t out[4]);
};

const Ops& scalar_ops();
bool avx2_available();         // compiled in and supported by this CPU
const Ops& ops(Backend b);     // throws std::invalid_argument if unavailable
const Ops& active();           // currently selected backend
void set_backend(Backend b);   // override (tests, CLI); throws if unavailable
Backend detected_backend();    // env override or CPU detection result

} // namespace heatwave::simd
