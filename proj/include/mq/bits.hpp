#pragma once

#include <cstdint>
#include <vector>

#include "mq/simd.hpp"

namespace mq {

/// Bit vector packed into 64-bit words. Bits beyond the logical size are
/// kept zero so equality, popcount and reductions work on whole words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::uint64_t nbits, bool value = false);

    std::uint64_t size() const { return nbits_; }
    std::uint64_t word_count() const { return words_.size(); }
    std::uint64_t* data() { return words_.data(); }
    const std::uint64_t* data() const { return words_.data(); }

    bool get(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::uint64_t i, bool v) {
        const std::uint64_t m = 1ull << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }
    void flip(std::uint64_t i) { words_[i >> 6] ^= 1ull << (i & 63); }

    void fill(bool value);
    void xor_with(const BitVec& other);  // sizes must match
    void andn_with(const BitVec& other); // this &= ~other
    std::uint64_t popcount() const;
    bool parity() const;

    /// Zero any bits at positions >= size() in the last word.
    void clear_tail();

    bool operator==(const BitVec&) const = default;

private:
    std::vector<std::uint64_t> words_;
    std::uint64_t nbits_ = 0;
};

/// dst[dpos .. dpos+len) ^= src[spos .. spos+len). Arbitrary bit offsets;
/// dst and src may be the same array as long as the ranges do not overlap.
void xor_bits(std::uint64_t* dst, std::uint64_t dpos,
              const std::uint64_t* src, std::uint64_t spos, std::uint64_t len);

/// Read cnt (1..64) bits starting at bit position pos.
std::uint64_t read_bits(const std::uint64_t* w, std::uint64_t pos, unsigned cnt);

/// Parity of each 2^block_log2-bit block of src, written as consecutive bits
/// of out (out must hold nblocks bits and start zeroed).
void block_parity(const std::uint64_t* src, std::uint64_t nblocks, unsigned block_log2,
                  std::uint64_t* out);

inline std::uint64_t low_mask(unsigned nbits) {
    return nbits >= 64 ? ~0ull : (1ull << nbits) - 1;
}

} // namespace mq
