#pragma once

#include <cstdint>

#include "mq/bits.hpp"
#include "mq/wset.hpp"

namespace mq {

/// Multilinear polynomial over F2 in n variables with degree <= d, stored as
/// a dense coefficient bit-table over W^n_d in canonical rank order. The ANF
/// is unique, so two polynomials over the same (n, d) are equal iff their
/// tables are equal.
class AnfPoly {
public:
    AnfPoly(unsigned n, unsigned d);
    static AnfPoly from_table(unsigned n, unsigned d, BitVec coeffs);

    unsigned n() const { return n_; }
    unsigned degree_bound() const { return d_; }
    const BitVec& coeffs() const { return coeffs_; }
    BitVec& coeffs() { return coeffs_; }

    /// Coefficient of the monomial given as a variable bit mask (bit 0 = x1).
    bool coeff(std::uint64_t monomial) const;
    /// Throws std::domain_error if the monomial weight exceeds d.
    void set_coeff(std::uint64_t monomial, bool v);

    /// Value at an assignment: XOR of coefficients of submasks of x.
    bool evaluate(std::uint64_t x) const;

    bool is_zero() const { return coeffs_.popcount() == 0; }
    /// Largest weight among set monomials (0 for the zero polynomial).
    unsigned degree() const;

    bool operator==(const AnfPoly&) const = default;

private:
    unsigned n_, d_;
    BitVec coeffs_;
};

/// Degree bound of the symbolic coefficient of z_1...z_{n1} when a degree-d
/// polynomial is summed over an n1-variable cube: max(d - n1, 0).
inline unsigned symbolic_coefficient_degree(unsigned d, unsigned n1) {
    return d > n1 ? d - n1 : 0;
}

} // namespace mq
