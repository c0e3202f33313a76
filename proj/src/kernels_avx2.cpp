// AVX2 variants of the square-scan kernels. Compiled with -mavx2 and picked
// at runtime; see kernels.cpp for dispatch.

#if defined(__x86_64__)

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace vfive::kernels {

namespace {

// Squares four int32 lane values into int64 lanes. _mm256_mul_epi32 multiplies
// the low 32 bits of each 64-bit lane (sign-extended), which is exactly the
// value placed there by _mm256_cvtepi32_epi64.
inline __m256i squares4(std::int32_t first) {
    const __m128i v32 = _mm_add_epi32(_mm_set1_epi32(first), _mm_set_epi32(3, 2, 1, 0));
    const __m256i v64 = _mm256_cvtepi32_epi64(v32);
    return _mm256_mul_epi32(v64, v64);
}

}  // namespace

void residue_scan_avx2(std::int64_t base, std::int32_t first, std::size_t count,
                       std::int64_t* out) {
    const __m256i vbase = _mm256_set1_epi64x(base);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256i sq = squares4((std::int32_t)(first + (std::int64_t)i));
        _mm256_storeu_si256((__m256i*)(out + i), _mm256_sub_epi64(vbase, sq));
    }
    for (; i < count; ++i) {
        const std::int64_t v = first + (std::int64_t)i;
        out[i] = base - v * v;
    }
}

void sum_squares_scan_avx2(std::int64_t base, std::int32_t first, std::size_t count,
                           std::int64_t* out) {
    const __m256i vbase = _mm256_set1_epi64x(base);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256i sq = squares4((std::int32_t)(first + (std::int64_t)i));
        _mm256_storeu_si256((__m256i*)(out + i), _mm256_add_epi64(vbase, sq));
    }
    for (; i < count; ++i) {
        const std::int64_t v = first + (std::int64_t)i;
        out[i] = base + v * v;
    }
}

}  // namespace vfive::kernels

#endif  // __x86_64__
