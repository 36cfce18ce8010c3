#include "heatwave/simd/dispatch.hpp"

#include "kernels_impl.hpp"

namespace heatwave::simd {

void exp_batch_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        ScalarArch::VF r = vexp<ScalarArch>(ScalarArch::VF{x[i]});
        out[i] = r.v;
    }
}

void log_batch_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        ScalarArch::VF r = vlog<ScalarArch>(ScalarArch::VF{x[i]});
        out[i] = r.v;
    }
}

void normal_icdf_batch_scalar(const double* u, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        ScalarArch::VF r = vnormal_icdf<ScalarArch>(ScalarArch::VF{u[i]});
        out[i] = r.v;
    }
}

void cell_normals_scalar(std::uint64_t seed, std::uint32_t stream, std::uint32_t step,
                         std::uint32_t j0, double* out, std::size_t n) {
    const std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    const std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    for (std::size_t i = 0; i < n; ++i) {
        PhiloxState<ScalarArch> c;
        c.c0 = {step};
        c.c1 = {j0 + static_cast<std::uint32_t>(i)};
        c.c2 = {stream};
        c.c3 = {detail::kCellTag};
        PhiloxState<ScalarArch> r = philox4x32_10<ScalarArch>(c, k0, k1);
        ScalarArch::VF u = ScalarArch::uniform_from(r.c0, r.c1);
        out[i] = vnormal_icdf<ScalarArch>(u).v;
    }
}

namespace {

void philox_block_scalar(const std::uint32_t ctr[4], const std::uint32_t key[2],
                         std::uint32_t out[4]) {
    detail::philox_block<ScalarArch>(ctr, key, out);
}

const Ops kScalarOps = {
    Backend::scalar,
    "scalar",
    &exp_batch_scalar,
    &log_batch_scalar,
    &normal_icdf_batch_scalar,
    &cell_normals_scalar,
    &philox_block_scalar,
};

} // namespace

const Ops& scalar_ops() { return kScalarOps; }

} // namespace heatwave::simd
