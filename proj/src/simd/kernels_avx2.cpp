// Compiled with -mavx2 -mfma (see src/CMakeLists.txt); nothing here runs
// unless dispatch.cpp has verified CPU support.

#include "heatwave/simd/dispatch.hpp"

#include "kernels_impl.hpp"

#if defined(__AVX2__) && defined(__FMA__)

namespace heatwave::simd {
namespace {

void exp_batch_avx2(const double* x, double* out, std::size_t n) {
    detail::exp_batch<Avx2Arch>(x, out, n);
}
void log_batch_avx2(const double* x, double* out, std::size_t n) {
    detail::log_batch<Avx2Arch>(x, out, n);
}
void normal_icdf_batch_avx2(const double* u, double* out, std::size_t n) {
    detail::normal_icdf_batch<Avx2Arch>(u, out, n);
}
void cell_normals_avx2(std::uint64_t seed, std::uint32_t stream, std::uint32_t step,
                       std::uint32_t j0, double* out, std::size_t n) {
    detail::cell_normals<Avx2Arch>(seed, stream, step, j0, out, n);
}
void philox_block_avx2(const std::uint32_t ctr[4], const std::uint32_t key[2],
                       std::uint32_t out[4]) {
    detail::philox_block<Avx2Arch>(ctr, key, out);
}

const Ops kAvx2Ops = {
    Backend::avx2,
    "avx2",
    &exp_batch_avx2,
    &log_batch_avx2,
    &normal_icdf_batch_avx2,
    &cell_normals_avx2,
    &philox_block_avx2,
};

} // namespace

const Ops* avx2_ops_table() { return &kAvx2Ops; }

} // namespace heatwave::simd

#else

namespace heatwave::simd {
const Ops* avx2_ops_table() { return nullptr; }
} // namespace heatwave::simd

#endif
