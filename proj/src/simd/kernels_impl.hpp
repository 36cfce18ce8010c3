#pragma once

// Batch-kernel bodies, instantiated once per architecture TU. Full lanes run
// the vector path; the remainder is delegated to the scalar instantiation so
// that results do not depend on how a buffer length splits into lanes.

#include <cstddef>
#include <cstdint>

#include "heatwave/simd/arch.hpp"
#include "heatwave/simd/math.hpp"
#include "heatwave/simd/philox.hpp"

namespace heatwave::simd {

// scalar tail handlers (defined in kernels_scalar.cpp)
void exp_batch_scalar(const double* x, double* out, std::size_t n);
void log_batch_scalar(const double* x, double* out, std::size_t n);
void normal_icdf_batch_scalar(const double* u, double* out, std::size_t n);
void cell_normals_scalar(std::uint64_t seed, std::uint32_t stream, std::uint32_t step,
                         std::uint32_t j0, double* out, std::size_t n);

namespace detail {

template <class A>
void exp_batch(const double* x, double* out, std::size_t n) {
    constexpr int W = A::lanes;
    std::size_t i = 0;
    for (; i + W <= n; i += W) A::store(out + i, vexp<A>(A::load(x + i)));
    if (i < n) exp_batch_scalar(x + i, out + i, n - i);
}

template <class A>
void log_batch(const double* x, double* out, std::size_t n) {
    constexpr int W = A::lanes;
    std::size_t i = 0;
    for (; i + W <= n; i += W) A::store(out + i, vlog<A>(A::load(x + i)));
    if (i < n) log_batch_scalar(x + i, out + i, n - i);
}

template <class A>
void normal_icdf_batch(const double* u, double* out, std::size_t n) {
    constexpr int W = A::lanes;
    std::size_t i = 0;
    for (; i + W <= n; i += W) A::store(out + i, vnormal_icdf<A>(A::load(u + i)));
    if (i < n) normal_icdf_batch_scalar(u + i, out + i, n - i);
}

// Counter layout per cell: (step, column, stream, tag). The two top output
// words form the uniform; lanes advance along the column index.
inline constexpr std::uint32_t kCellTag = 0x68656174u; // "heat"

template <class A>
void cell_normals(std::uint64_t seed, std::uint32_t stream, std::uint32_t step,
                  std::uint32_t j0, double* out, std::size_t n) {
    constexpr int W = A::lanes;
    const std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    const std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        PhiloxState<A> c;
        c.c0 = A::u32_set1(step);
        c.c1 = A::u32_iota(j0 + static_cast<std::uint32_t>(i));
        c.c2 = A::u32_set1(stream);
        c.c3 = A::u32_set1(kCellTag);
        PhiloxState<A> r = philox4x32_10<A>(c, k0, k1);
        typename A::VF u = A::uniform_from(r.c0, r.c1);
        A::store(out + i, vnormal_icdf<A>(u));
    }
    if (i < n)
        cell_normals_scalar(seed, stream, step, j0 + static_cast<std::uint32_t>(i),
                            out + i, n - i);
}

template <class A>
void philox_block(const std::uint32_t ctr[4], const std::uint32_t key[2],
                  std::uint32_t out[4]) {
    PhiloxState<A> c;
    c.c0 = A::u32_set1(ctr[0]);
    c.c1 = A::u32_set1(ctr[1]);
    c.c2 = A::u32_set1(ctr[2]);
    c.c3 = A::u32_set1(ctr[3]);
    PhiloxState<A> r = philox4x32_10<A>(c, key[0], key[1]);
    // lane 0 of each word
    double tmp[A::lanes > 1 ? 4 : 1];
    (void)tmp;
    if constexpr (A::lanes == 1) {
        out[0] = r.c0.v;
        out[1] = r.c1.v;
        out[2] = r.c2.v;
        out[3] = r.c3.v;
    } else {
#if defined(__AVX2__) && defined(__FMA__)
        out[0] = static_cast<std::uint32_t>(_mm256_extract_epi64(r.c0.v, 0));
        out[1] = static_cast<std::uint32_t>(_mm256_extract_epi64(r.c1.v, 0));
        out[2] = static_cast<std::uint32_t>(_mm256_extract_epi64(r.c2.v, 0));
        out[3] = static_cast<std::uint32_t>(_mm256_extract_epi64(r.c3.v, 0));
#endif
    }
}

} // namespace detail
} // namespace heatwave::simd
