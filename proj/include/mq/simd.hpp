#pragma once

#include <cstddef>
#include <cstdint>

namespace mq::simd {

// Word-level kernels behind the bit containers and transforms. One scalar
// reference implementation plus an AVX2 variant selected at runtime; both
// must produce identical bits (equivalence-tested).
struct Kernels {
    const char* name;

    // dst[i] ^= src[i]
    void (*xor_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
    // dst[i] &= ~src[i]
    void (*andn_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
    // XOR-reduction of n words
    std::uint64_t (*xor_reduce)(const std::uint64_t* w, std::size_t n);
    // total set bits in n words
    std::uint64_t (*popcount)(const std::uint64_t* w, std::size_t n);
    // One in-place butterfly pass with stride 2^j (j < 6) applied to every
    // word: w[i] ^= (w[i] & mask_j) << 2^j. Used by the cube transform.
    void (*cube_pass_small)(std::uint64_t* w, std::size_t n, unsigned j);
};

const Kernels& scalar_kernels();

bool avx2_available();
const Kernels& avx2_kernels(); // only valid when avx2_available()

// Runtime-selected backend. MQ_SIMD=scalar in the environment forces the
// scalar kernels (useful when benchmarking the dispatch itself).
const Kernels& active();

// Bit patterns selecting positions whose index bit j is 0, j = 0..5.
inline constexpr std::uint64_t cube_mask[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
};

} // namespace mq::simd
