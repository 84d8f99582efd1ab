#include "mq/anf.hpp"

#include <stdexcept>

namespace mq {

AnfPoly::AnfPoly(unsigned n, unsigned d) : n_(n), d_(d), coeffs_(wset_size(n, d)) {
    if (d > n)
        throw std::domain_error("AnfPoly: degree bound exceeds variable count");
}

AnfPoly AnfPoly::from_table(unsigned n, unsigned d, BitVec coeffs) {
    AnfPoly p(n, d);
    if (coeffs.size() != p.coeffs_.size())
        throw std::invalid_argument("AnfPoly::from_table: table size mismatch");
    p.coeffs_ = std::move(coeffs);
    return p;
}

bool AnfPoly::coeff(std::uint64_t monomial) const {
    return coeffs_.get(WSet(n_, d_).rank(monomial));
}

void AnfPoly::set_coeff(std::uint64_t monomial, bool v) {
    coeffs_.set(WSet(n_, d_).rank(monomial), v);
}

bool AnfPoly::evaluate(std::uint64_t x) const {
    const auto& pts = wset_points(n_, d_);
    bool acc = false;
    const std::uint64_t* w = coeffs_.data();
    const std::uint64_t nw = coeffs_.word_count();
    for (std::uint64_t wi = 0; wi < nw; ++wi) {
        std::uint64_t word = w[wi];
        while (word) {
            const unsigned b = static_cast<unsigned>(__builtin_ctzll(word));
            const std::uint64_t mono = pts[(wi << 6) + b];
            acc ^= (mono & x) == mono;
            word &= word - 1;
        }
    }
    return acc;
}

unsigned AnfPoly::degree() const {
    const auto& pts = wset_points(n_, d_);
    unsigned deg = 0;
    const std::uint64_t* w = coeffs_.data();
    const std::uint64_t nw = coeffs_.word_count();
    for (std::uint64_t wi = 0; wi < nw; ++wi) {
        std::uint64_t word = w[wi];
        while (word) {
            const unsigned b = static_cast<unsigned>(__builtin_ctzll(word));
            const unsigned hw = static_cast<unsigned>(__builtin_popcountll(pts[(wi << 6) + b]));
            if (hw > deg)
                deg = hw;
            word &= word - 1;
        }
    }
    return deg;
}

} // namespace mq
