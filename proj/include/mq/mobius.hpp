#pragma once

#include <cstdint>

#include "mq/anf.hpp"
#include "mq/bits.hpp"

namespace mq {

/// Truth table of a function over the full cube {0,1}^n. Index = assignment
/// read as an integer (bit i = x_{i+1}).
struct TruthTable {
    unsigned n = 0;
    BitVec bits; // 2^n entries
};

/// Evaluations over the product W^{n_outer}_w x {0,1}^{n_inner}.
/// Entry for (outer index iy, inner assignment iz) sits at
/// iy * 2^{n_inner} + iz: the cube factor is the fastest-varying index.
struct MixedTable {
    unsigned n_outer = 0;
    unsigned w = 0;
    unsigned n_inner = 0;
    BitVec bits;
};

/// In-place Mobius butterfly over the cube factor: total_bits is a multiple
/// of 2^{n_inner} and each contiguous 2^{n_inner}-bit block is transformed.
/// Over F2 the transform is an involution, so the same call converts ANF
/// coefficients to evaluations and back. Returns the word-op count.
std::uint64_t cube_transform(BitVec& bits, unsigned n_inner);

/// In-place truncated Mobius butterfly over a W^{n_outer}_w factor whose
/// points own contiguous blocks of block_bits bits. Involution as well.
std::uint64_t wset_transform(BitVec& bits, unsigned n_outer, unsigned w,
                             std::uint64_t block_bits);

/// Truth table over the full cube -> ANF coefficients (degree bound n).
AnfPoly mobius_full(const TruthTable& tt);
/// ANF -> truth table over the full cube (inverse of mobius_full).
TruthTable mobius_full_inverse(const AnfPoly& f);

/// Evaluations of a degree-<=d function on W^n_d -> its ANF. The caller
/// guarantees the evaluated function really has degree <= d; a violation
/// silently aliases onto a lower-degree polynomial (not detectable here).
AnfPoly mobius_truncated(unsigned n, unsigned d, const BitVec& evals);
/// ANF -> evaluations on W^n_w for w >= degree bound (same butterfly run in
/// the evaluation direction).
BitVec wset_evaluations(const AnfPoly& f, unsigned w);

/// Evaluate f on W^{n-n_inner}_{d1} x {0,1}^{n_inner} by composing the two
/// factor transforms. Requires d1 >= degree bound of f; d1 is clamped to
/// n - n_inner.
MixedTable mobius_mixed(const AnfPoly& f, unsigned n_inner, unsigned d1);

/// Same as mobius_mixed but valid for any weight bound w: monomials whose
/// outer part is heavier than w cannot affect values on weight-<=w points
/// and are dropped. Exact for evaluation (not for interpolation).
MixedTable eval_on_mixed_domain(const AnfPoly& f, unsigned n_inner, unsigned w);

} // namespace mq
