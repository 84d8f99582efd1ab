#pragma once

#include <cstdint>

namespace mq {

/// Counter-based pseudo-random stream: output i is a mix of (key, i), so a
/// stream can be replayed or forked without shared state. fork(tag) derives
/// an independent child stream from the key alone, which keeps parallel and
/// sequential execution bit-identical.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : key_(mix(seed, 0x243f6a8885a308d3ull)) {}

    std::uint64_t next() { return mix(key_, ctr_++); }

    Rng fork(std::uint64_t tag) const {
        Rng child(0);
        child.key_ = mix(key_ ^ 0x452821e638d01377ull, tag);
        child.ctr_ = 0;
        return child;
    }

    bool bit() {
        if (bit_count_ == 0) {
            bit_buf_ = next();
            bit_count_ = 64;
        }
        const bool b = bit_buf_ & 1u;
        bit_buf_ >>= 1;
        --bit_count_;
        return b;
    }

    /// Uniform value in [0, bound) by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~0ull) / bound);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    /// Fill nbits with fresh uniform bits (whole words from next(), masked).
    void fill_bits(std::uint64_t* words, std::uint64_t nbits) {
        const std::uint64_t nw = (nbits + 63) >> 6;
        for (std::uint64_t i = 0; i < nw; ++i)
            words[i] = next();
        const unsigned rem = nbits & 63;
        if (rem && nw)
            words[nw - 1] &= (1ull << rem) - 1;
    }

private:
    static std::uint64_t mix(std::uint64_t k, std::uint64_t c) {
        std::uint64_t z = k + 0x9e3779b97f4a7c15ull * (c + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_ = 0;
    std::uint64_t ctr_ = 0;
    std::uint64_t bit_buf_ = 0;
    unsigned bit_count_ = 0;
};

/// Stream tag namespaces; keeps forked substreams from colliding.
enum class Stream : std::uint64_t {
    trial = 1,
    recurse = 2,
    combos = 3,
    affine = 4,
    parity_call = 5,
    matrix = 6,
    estimate = 7,
    generate = 8,
    search = 9,
    iterate = 10,
};

inline std::uint64_t stream_tag(Stream s, std::uint64_t index = 0) {
    return (static_cast<std::uint64_t>(s) << 48) | index;
}

} // namespace mq
