#pragma once

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
// Purely functional: output = f(key, counter), which is what makes noise
// fields restrictable and replicates parallelizable with random access.

#include "heatwave/simd/arch.hpp"

namespace heatwave::simd {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

template <class A> struct PhiloxState {
    typename A::VU32 c0, c1, c2, c3;
};

template <class A>
PhiloxState<A> philox4x32_10(PhiloxState<A> c, std::uint32_t key0, std::uint32_t key1) {
    typename A::VU32 k0 = A::u32_set1(key0);
    typename A::VU32 k1 = A::u32_set1(key1);
    const typename A::VU32 w0 = A::u32_set1(kPhiloxW0);
    const typename A::VU32 w1 = A::u32_set1(kPhiloxW1);
    for (int round = 0; round < 10; ++round) {
        typename A::VU32 hi0, lo0, hi1, lo1;
        A::mulhilo(c.c0, kPhiloxM0, hi0, lo0);
        A::mulhilo(c.c2, kPhiloxM1, hi1, lo1);
        PhiloxState<A> n;
        n.c0 = A::u32_xor(A::u32_xor(hi1, c.c1), k0);
        n.c1 = lo1;
        n.c2 = A::u32_xor(A::u32_xor(hi0, c.c3), k1);
        n.c3 = lo0;
        c = n;
        k0 = A::u32_add(k0, w0);
        k1 = A::u32_add(k1, w1);
    }
    return c;
}

// Standard-normal deviate for lattice cell (step, column) of a given
// (seed, stream): one Philox block per cell, top words -> uniform -> icdf.
// The batched form lives in kernels_impl.hpp.

} // namespace heatwave::simd
