#include "mq/simd.hpp"

namespace mq::simd {

namespace {

void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] ^= src[i];
}

void andn_words_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] &= ~src[i];
}

std::uint64_t xor_reduce_scalar(const std::uint64_t* w, std::size_t n) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i)
        acc ^= w[i];
    return acc;
}

std::uint64_t popcount_scalar(const std::uint64_t* w, std::size_t n) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i)
        acc += static_cast<std::uint64_t>(__builtin_popcountll(w[i]));
    return acc;
}

void cube_pass_small_scalar(std::uint64_t* w, std::size_t n, unsigned j) {
    const std::uint64_t m = cube_mask[j];
    const unsigned s = 1u << j;
    for (std::size_t i = 0; i < n; ++i)
        w[i] ^= (w[i] & m) << s;
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k = {
        "scalar",
        &xor_words_scalar,
        &andn_words_scalar,
        &xor_reduce_scalar,
        &popcount_scalar,
        &cube_pass_small_scalar,
    };
    return k;
}

} // namespace mq::simd
