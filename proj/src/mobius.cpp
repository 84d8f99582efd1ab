#include "mq/mobius.hpp"

#include <algorithm>
#include <stdexcept>

namespace mq {

namespace {

constexpr std::uint64_t kMaxDomainBits = 1ull << 32;

void check_domain(std::uint64_t bits) {
    if (bits > kMaxDomainBits)
        throw std::domain_error("transform domain exceeds the desk-scale cap");
}

} // namespace

std::uint64_t cube_transform(BitVec& bits, unsigned n_inner) {
    if (n_inner == 0)
        return 0;
    const auto& k = simd::active();
    std::uint64_t* w = bits.data();
    const std::uint64_t nwords = bits.word_count();
    std::uint64_t ops = 0;

    const unsigned small = std::min(n_inner, 6u);
    for (unsigned j = 0; j < small; ++j) {
        k.cube_pass_small(w, nwords, j);
        ops += nwords;
    }
    // Strides of a word or more: the butterfly XORs whole word runs. Blocks
    // are contiguous and block size is a multiple of 2*stride, so a flat
    // sweep over the array respects block boundaries.
    for (unsigned j = 6; j < n_inner; ++j) {
        const std::uint64_t stride = 1ull << (j - 6);
        for (std::uint64_t off = 0; off + 2 * stride <= nwords; off += 2 * stride) {
            k.xor_words(w + off + stride, w + off, stride);
            ops += stride;
        }
    }
    bits.clear_tail();
    return ops;
}

std::uint64_t wset_transform(BitVec& bits, unsigned n_outer, unsigned w,
                             std::uint64_t block_bits) {
    const auto& pairs = wset_pairs(n_outer, w);
    std::uint64_t* words = bits.data();
    std::uint64_t ops = 0;
    for (unsigned j = 0; j < n_outer; ++j) {
        for (const auto& [lo, hi] : pairs[j])
            xor_bits(words, hi * block_bits, words, lo * block_bits, block_bits);
        ops += pairs[j].size() * ((block_bits + 63) >> 6);
    }
    return ops;
}

AnfPoly mobius_full(const TruthTable& tt) {
    if (tt.bits.size() != (1ull << tt.n))
        throw std::invalid_argument("mobius_full: table length is not 2^n");
    check_domain(tt.bits.size());
    BitVec work = tt.bits;
    cube_transform(work, tt.n);
    // reindex from cube order to canonical W-order
    const auto& pts = wset_points(tt.n, tt.n);
    BitVec coeffs(work.size());
    for (std::uint64_t r = 0; r < pts.size(); ++r)
        if (work.get(pts[r]))
            coeffs.set(r, true);
    return AnfPoly::from_table(tt.n, tt.n, std::move(coeffs));
}

TruthTable mobius_full_inverse(const AnfPoly& f) {
    check_domain(1ull << f.n());
    const auto& pts = wset_points(f.n(), f.degree_bound());
    BitVec work(1ull << f.n());
    const BitVec& coeffs = f.coeffs();
    for (std::uint64_t r = 0; r < pts.size(); ++r)
        if (coeffs.get(r))
            work.set(pts[r], true);
    cube_transform(work, f.n());
    return TruthTable{f.n(), std::move(work)};
}

AnfPoly mobius_truncated(unsigned n, unsigned d, const BitVec& evals) {
    if (evals.size() != wset_size(n, d))
        throw std::invalid_argument("mobius_truncated: table length is not |W^n_d|");
    BitVec work = evals;
    wset_transform(work, n, d, 1);
    return AnfPoly::from_table(n, d, std::move(work));
}

BitVec wset_evaluations(const AnfPoly& f, unsigned w) {
    if (w < f.degree_bound())
        throw std::domain_error("wset_evaluations: weight bound below degree");
    MixedTable t = eval_on_mixed_domain(f, 0, w);
    return std::move(t.bits);
}

MixedTable eval_on_mixed_domain(const AnfPoly& f, unsigned n_inner, unsigned w) {
    const unsigned n = f.n();
    if (n_inner > n)
        throw std::invalid_argument("eval_on_mixed_domain: n_inner exceeds n");
    const unsigned n_outer = n - n_inner;
    w = std::min(w, n_outer);

    const WSet outer(n_outer, w);
    const std::uint64_t total = outer.size() << n_inner;
    check_domain(total);
    BitVec table(total);

    // Scatter coefficients into the product layout; outer parts heavier than
    // w never reach weight-<=w points, so they are dropped.
    const auto& pts = wset_points(n, f.degree_bound());
    const BitVec& coeffs = f.coeffs();
    const std::uint64_t outer_mask = low_mask(n_outer);
    const std::uint64_t* cw = coeffs.data();
    for (std::uint64_t wi = 0; wi < coeffs.word_count(); ++wi) {
        std::uint64_t word = cw[wi];
        while (word) {
            const unsigned b = static_cast<unsigned>(__builtin_ctzll(word));
            word &= word - 1;
            const std::uint64_t mono = pts[(wi << 6) + b];
            const std::uint64_t mono_outer = mono & outer_mask;
            if (static_cast<unsigned>(__builtin_popcountll(mono_outer)) > w)
                continue;
            const std::uint64_t mono_inner = n_outer >= 64 ? 0 : mono >> n_outer;
            table.flip((outer.rank(mono_outer) << n_inner) + mono_inner);
        }
    }

    cube_transform(table, n_inner);
    wset_transform(table, n_outer, w, 1ull << n_inner);
    return MixedTable{n_outer, w, n_inner, std::move(table)};
}

MixedTable mobius_mixed(const AnfPoly& f, unsigned n_inner, unsigned d1) {
    if (d1 < f.degree_bound())
        throw std::domain_error("mobius_mixed: weight bound below degree");
    return eval_on_mixed_domain(f, n_inner, d1);
}

} // namespace mq
