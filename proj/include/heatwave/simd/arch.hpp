#pragma once

// Lane abstractions for the vectorized kernels. The same algorithm source
// (math.hpp, philox.hpp) is instantiated once per architecture; lanes are
// independent, every operation maps to an IEEE-754 instruction (fma included),
// so a given input produces bit-identical results on every backend.

#include <cstdint>
#include <cstring>
#include <cmath>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#endif

namespace heatwave::simd {

// ---------------------------------------------------------------------------
// Scalar reference lanes
// ---------------------------------------------------------------------------

struct ScalarArch {
    static constexpr int lanes = 1;

    struct VF {
        double v;
    };
    struct VI {
        std::int64_t v;
    };
    struct VM {
        bool v;
    };

    static VF set1(double x) { return {x}; }
    static VF load(const double* p) { return {*p}; }
    static void store(double* p, VF x) { *p = x.v; }

    static VF add(VF a, VF b) { return {a.v + b.v}; }
    static VF sub(VF a, VF b) { return {a.v - b.v}; }
    static VF mul(VF a, VF b) { return {a.v * b.v}; }
    static VF div(VF a, VF b) { return {a.v / b.v}; }
    static VF fma(VF a, VF b, VF c) { return {std::fma(a.v, b.v, c.v)}; }
    static VF neg(VF a) { return {-a.v}; }
    static VF sqrt(VF a) { return {std::sqrt(a.v)}; }
    static VF min(VF a, VF b) { return {a.v < b.v ? a.v : b.v}; }
    static VF max(VF a, VF b) { return {a.v > b.v ? a.v : b.v}; }
    static VF round_nearest(VF a) { return {std::nearbyint(a.v)}; }

    static VM lt(VF a, VF b) { return {a.v < b.v}; }
    static VM le(VF a, VF b) { return {a.v <= b.v}; }
    static VM gt(VF a, VF b) { return {a.v > b.v}; }
    static VM mor(VM a, VM b) { return {a.v || b.v}; }
    static VF select(VM m, VF a, VF b) { return {m.v ? a.v : b.v}; }

    static VI to_int(VF a) { return {static_cast<std::int64_t>(a.v)}; }
    static VF to_f64(VI a) { return {static_cast<double>(a.v)}; }
    static VI bits_of(VF a) {
        VI r;
        std::memcpy(&r.v, &a.v, 8);
        return r;
    }
    static VF f64_from_bits(VI a) {
        VF r;
        std::memcpy(&r.v, &a.v, 8);
        return r;
    }
    static VI iadd(VI a, VI b) { return {a.v + b.v}; }
    static VI isub(VI a, VI b) { return {a.v - b.v}; }
    static VI iset1(std::int64_t x) { return {x}; }
    template <int K> static VI shl(VI a) { return {a.v << K}; }
    template <int K> static VI shr(VI a) {
        return {static_cast<std::int64_t>(static_cast<std::uint64_t>(a.v) >> K)};
    }
    static VI iand(VI a, VI b) { return {a.v & b.v}; }
    static VI ior(VI a, VI b) { return {a.v | b.v}; }

    // Philox word: one 32-bit value per lane.
    struct VU32 {
        std::uint32_t v;
    };
    static VU32 u32_set1(std::uint32_t x) { return {x}; }
    static VU32 u32_add(VU32 a, VU32 b) { return {a.v + b.v}; }
    static VU32 u32_xor(VU32 a, VU32 b) { return {a.v ^ b.v}; }
    static void mulhilo(VU32 a, std::uint32_t m, VU32& hi, VU32& lo) {
        std::uint64_t p = static_cast<std::uint64_t>(a.v) * m;
        hi.v = static_cast<std::uint32_t>(p >> 32);
        lo.v = static_cast<std::uint32_t>(p);
    }
    // lane k of a counter word that increments along the batch
    static VU32 u32_iota(std::uint32_t base) { return {base}; }
    // Combine two 32-bit words into a uniform double. 52 random bits plus a
    // centering half-ulp keep every step exact, so u is in
    // [2^-53, 1 - 2^-53] and never hits 0 or 1.
    static VF uniform_from(VU32 hi, VU32 lo) {
        std::uint64_t bits = (static_cast<std::uint64_t>(hi.v) << 32) | lo.v;
        return {(static_cast<double>(bits >> 12) + 0.5) * 0x1p-52};
    }
};

// ---------------------------------------------------------------------------
// AVX2 + FMA lanes (4 x double). Only visible in TUs compiled with the flags.
// ---------------------------------------------------------------------------

#if defined(__AVX2__) && defined(__FMA__)

struct Avx2Arch {
    static constexpr int lanes = 4;

    struct VF {
        __m256d v;
    };
    struct VI {
        __m256i v;
    };
    struct VM {
        __m256d v;
    };

    static VF set1(double x) { return {_mm256_set1_pd(x)}; }
    static VF load(const double* p) { return {_mm256_loadu_pd(p)}; }
    static void store(double* p, VF x) { _mm256_storeu_pd(p, x.v); }

    static VF add(VF a, VF b) { return {_mm256_add_pd(a.v, b.v)}; }
    static VF sub(VF a, VF b) { return {_mm256_sub_pd(a.v, b.v)}; }
    static VF mul(VF a, VF b) { return {_mm256_mul_pd(a.v, b.v)}; }
    static VF div(VF a, VF b) { return {_mm256_div_pd(a.v, b.v)}; }
    static VF fma(VF a, VF b, VF c) { return {_mm256_fmadd_pd(a.v, b.v, c.v)}; }
    static VF neg(VF a) { return {_mm256_xor_pd(a.v, _mm256_set1_pd(-0.0))}; }
    static VF sqrt(VF a) { return {_mm256_sqrt_pd(a.v)}; }
    static VF min(VF a, VF b) { return {_mm256_min_pd(a.v, b.v)}; }
    static VF max(VF a, VF b) { return {_mm256_max_pd(a.v, b.v)}; }
    static VF round_nearest(VF a) {
        return {_mm256_round_pd(a.v, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC)};
    }

    static VM lt(VF a, VF b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ)}; }
    static VM le(VF a, VF b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_LE_OQ)}; }
    static VM gt(VF a, VF b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_GT_OQ)}; }
    static VM mor(VM a, VM b) { return {_mm256_or_pd(a.v, b.v)}; }
    static VF select(VM m, VF a, VF b) { return {_mm256_blendv_pd(b.v, a.v, m.v)}; }

    // Exact for |a| < 2^51 (the only range we use): push the value into the
    // mantissa with the 1.5*2^52 magic constant, then strip the magic bits.
    static VI to_int(VF a) {
        const __m256d magic = _mm256_set1_pd(6755399441055744.0); // 1.5 * 2^52
        __m256d t = _mm256_add_pd(a.v, magic);
        return {_mm256_sub_epi64(_mm256_castpd_si256(t), _mm256_castpd_si256(magic))};
    }
    static VF to_f64(VI a) {
        const __m256i magic = _mm256_castpd_si256(_mm256_set1_pd(6755399441055744.0));
        __m256i t = _mm256_add_epi64(a.v, magic);
        return {_mm256_sub_pd(_mm256_castsi256_pd(t), _mm256_set1_pd(6755399441055744.0))};
    }
    static VI bits_of(VF a) { return {_mm256_castpd_si256(a.v)}; }
    static VF f64_from_bits(VI a) { return {_mm256_castsi256_pd(a.v)}; }
    static VI iadd(VI a, VI b) { return {_mm256_add_epi64(a.v, b.v)}; }
    static VI isub(VI a, VI b) { return {_mm256_sub_epi64(a.v, b.v)}; }
    static VI iset1(std::int64_t x) { return {_mm256_set1_epi64x(x)}; }
    template <int K> static VI shl(VI a) { return {_mm256_slli_epi64(a.v, K)}; }
    template <int K> static VI shr(VI a) { return {_mm256_srli_epi64(a.v, K)}; }
    static VI iand(VI a, VI b) { return {_mm256_and_si256(a.v, b.v)}; }
    static VI ior(VI a, VI b) { return {_mm256_or_si256(a.v, b.v)}; }

    // Philox word: four 32-bit values, one per 64-bit lane (zero-extended),
    // so the 32x32 -> 64 product is a plain epu32 multiply.
    struct VU32 {
        __m256i v;
    };
    static VU32 u32_set1(std::uint32_t x) {
        return {_mm256_set1_epi64x(static_cast<long long>(x))};
    }
    static VU32 u32_add(VU32 a, VU32 b) {
        const __m256i mask = _mm256_set1_epi64x(0xFFFFFFFFll);
        return {_mm256_and_si256(_mm256_add_epi64(a.v, b.v), mask)};
    }
    static VU32 u32_xor(VU32 a, VU32 b) { return {_mm256_xor_si256(a.v, b.v)}; }
    static void mulhilo(VU32 a, std::uint32_t m, VU32& hi, VU32& lo) {
        const __m256i mask = _mm256_set1_epi64x(0xFFFFFFFFll);
        __m256i p = _mm256_mul_epu32(a.v, _mm256_set1_epi64x(static_cast<long long>(m)));
        hi.v = _mm256_srli_epi64(p, 32);
        lo.v = _mm256_and_si256(p, mask);
    }
    static VU32 u32_iota(std::uint32_t base) {
        return {_mm256_set_epi64x(static_cast<long long>(base + 3),
                                  static_cast<long long>(base + 2),
                                  static_cast<long long>(base + 1),
                                  static_cast<long long>(base))};
    }
    static VF uniform_from(VU32 hi, VU32 lo) {
        __m256i bits =
            _mm256_or_si256(_mm256_slli_epi64(hi.v, 32), lo.v);
        __m256i top52 = _mm256_srli_epi64(bits, 12);
        // exact uint64 -> double for values < 2^52
        const __m256d magic = _mm256_set1_pd(4503599627370496.0); // 2^52
        __m256i lo32 = _mm256_and_si256(top52, _mm256_set1_epi64x(0xFFFFFFFFll));
        __m256i hi32 = _mm256_srli_epi64(top52, 32);
        __m256d dlo = _mm256_sub_pd(
            _mm256_castsi256_pd(_mm256_or_si256(lo32, _mm256_castpd_si256(magic))), magic);
        __m256d dhi = _mm256_mul_pd(
            _mm256_sub_pd(_mm256_castsi256_pd(
                              _mm256_or_si256(hi32, _mm256_castpd_si256(magic))),
                          magic),
            _mm256_set1_pd(4294967296.0));
        __m256d d = _mm256_add_pd(dhi, dlo);
        return {_mm256_mul_pd(_mm256_add_pd(d, _mm256_set1_pd(0.5)),
                              _mm256_set1_pd(0x1p-52))};
    }
};

#endif // __AVX2__ && __FMA__

} // namespace heatwave::simd
