#include "mq/bits.hpp"

#include <algorithm>
#include <stdexcept>

namespace mq {

BitVec::BitVec(std::uint64_t nbits, bool value) : nbits_(nbits) {
    words_.assign((nbits + 63) >> 6, value ? ~0ull : 0ull);
    clear_tail();
}

void BitVec::fill(bool value) {
    std::fill(words_.begin(), words_.end(), value ? ~0ull : 0ull);
    clear_tail();
}

void BitVec::xor_with(const BitVec& other) {
    if (other.nbits_ != nbits_)
        throw std::invalid_argument("BitVec::xor_with: size mismatch");
    simd::active().xor_words(words_.data(), other.words_.data(), words_.size());
}

void BitVec::andn_with(const BitVec& other) {
    if (other.nbits_ != nbits_)
        throw std::invalid_argument("BitVec::andn_with: size mismatch");
    simd::active().andn_words(words_.data(), other.words_.data(), words_.size());
}

std::uint64_t BitVec::popcount() const {
    return simd::active().popcount(words_.data(), words_.size());
}

bool BitVec::parity() const {
    return __builtin_parityll(simd::active().xor_reduce(words_.data(), words_.size()));
}

void BitVec::clear_tail() {
    const unsigned rem = nbits_ & 63;
    if (rem && !words_.empty())
        words_.back() &= low_mask(rem);
}

std::uint64_t read_bits(const std::uint64_t* w, std::uint64_t pos, unsigned cnt) {
    const std::uint64_t i = pos >> 6;
    const unsigned b = pos & 63;
    std::uint64_t v = w[i] >> b;
    if (b && b + cnt > 64)
        v |= w[i + 1] << (64 - b);
    return cnt >= 64 ? v : v & low_mask(cnt);
}

void xor_bits(std::uint64_t* dst, std::uint64_t dpos,
              const std::uint64_t* src, std::uint64_t spos, std::uint64_t len) {
    if (len == 0)
        return;
    if (((dpos | spos) & 63) == 0) {
        const std::uint64_t nw = len >> 6;
        simd::active().xor_words(dst + (dpos >> 6), src + (spos >> 6), nw);
        const unsigned rem = len & 63;
        if (rem) {
            const std::uint64_t bits = src[(spos >> 6) + nw] & low_mask(rem);
            dst[(dpos >> 6) + nw] ^= bits;
        }
        return;
    }
    while (len) {
        const std::uint64_t dw = dpos >> 6;
        const unsigned db = dpos & 63;
        const unsigned take = static_cast<unsigned>(std::min<std::uint64_t>(64 - db, len));
        dst[dw] ^= read_bits(src, spos, take) << db;
        dpos += take;
        spos += take;
        len -= take;
    }
}

void block_parity(const std::uint64_t* src, std::uint64_t nblocks, unsigned block_log2,
                  std::uint64_t* out) {
    const auto& k = simd::active();
    if (block_log2 >= 6) {
        const std::uint64_t wpb = 1ull << (block_log2 - 6);
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            if (__builtin_parityll(k.xor_reduce(src + b * wpb, wpb)))
                out[b >> 6] |= 1ull << (b & 63);
        }
        return;
    }
    const unsigned f = 1u << block_log2;
    const std::uint64_t blocks_per_word = 64u >> block_log2;
    const std::uint64_t nwords = (nblocks * f + 63) >> 6;
    std::uint64_t written = 0;
    for (std::uint64_t wi = 0; wi < nwords && written < nblocks; ++wi) {
        std::uint64_t t = src[wi];
        for (unsigned s = f >> 1; s; s >>= 1)
            t ^= t >> s;
        for (std::uint64_t b = 0; b < blocks_per_word && written < nblocks; ++b, ++written) {
            if ((t >> (b * f)) & 1u)
                out[written >> 6] |= 1ull << (written & 63);
        }
    }
}

} // namespace mq
