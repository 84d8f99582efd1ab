#include "mq/simd.hpp"

#if defined(MQ_BUILD_AVX2)

#include <immintrin.h>

namespace mq::simd {

namespace {

void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
    }
    for (; i < n; ++i)
        dst[i] ^= src[i];
}

void andn_words_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        // andnot computes (~b) & a
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_andnot_si256(b, a));
    }
    for (; i < n; ++i)
        dst[i] &= ~src[i];
}

std::uint64_t xor_reduce_avx2(const std::uint64_t* w, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_xor_si256(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i)));
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t r = lanes[0] ^ lanes[1] ^ lanes[2] ^ lanes[3];
    for (; i < n; ++i)
        r ^= w[i];
    return r;
}

// Nibble-LUT popcount (Mula); per-lane byte counts folded with SAD.
inline __m256i popcount256(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

std::uint64_t popcount_avx2(const std::uint64_t* w, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_epi64(acc, popcount256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i))));
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t r = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i)
        r += static_cast<std::uint64_t>(__builtin_popcountll(w[i]));
    return r;
}

void cube_pass_small_avx2(std::uint64_t* w, std::size_t n, unsigned j) {
    const __m256i m = _mm256_set1_epi64x(static_cast<long long>(cube_mask[j]));
    const int s = 1 << j;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i));
        __m256i t = _mm256_slli_epi64(_mm256_and_si256(x, m), s);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(w + i), _mm256_xor_si256(x, t));
    }
    const std::uint64_t ms = cube_mask[j];
    for (; i < n; ++i)
        w[i] ^= (w[i] & ms) << static_cast<unsigned>(s);
}

} // namespace

const Kernels& avx2_kernels() {
    static const Kernels k = {
        "avx2",
        &xor_words_avx2,
        &andn_words_avx2,
        &xor_reduce_avx2,
        &popcount_avx2,
        &cube_pass_small_avx2,
    };
    return k;
}

} // namespace mq::simd

#else

namespace mq::simd {

const Kernels& avx2_kernels() {
    return scalar_kernels();
}

} // namespace mq::simd

#endif
