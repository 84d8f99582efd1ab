#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mq/rng.hpp"

namespace mq {

/// Square bit matrix over F2, n <= 64, one word per row (bit j = column j).
class F2Matrix {
public:
    F2Matrix() = default;
    explicit F2Matrix(unsigned n);

    static F2Matrix identity(unsigned n);

    unsigned n() const { return n_; }
    bool get(unsigned r, unsigned c) const { return (rows_[r] >> c) & 1u; }
    void set(unsigned r, unsigned c, bool v) {
        if (v)
            rows_[r] |= 1ull << c;
        else
            rows_[r] &= ~(1ull << c);
    }
    std::uint64_t row(unsigned r) const { return rows_[r]; }
    void set_row(unsigned r, std::uint64_t bits) { rows_[r] = bits; }

    /// x = M v: bit i of the result is parity(row_i & v).
    std::uint64_t mul_vec(std::uint64_t v) const;
    F2Matrix mul(const F2Matrix& other) const;

    unsigned rank() const;
    std::optional<F2Matrix> inverse() const;

    bool operator==(const F2Matrix&) const = default;

private:
    unsigned n_ = 0;
    std::vector<std::uint64_t> rows_;
};

/// Uniform sample from GL(n, F2) by rejection, returned with its inverse.
std::pair<F2Matrix, F2Matrix> sample_invertible(unsigned n, Rng& rng);

/// One affine constraint sum_i a_i x_i + b = 0.
struct AffineRow {
    std::uint64_t a = 0;
    bool b = false;
};

/// Full solution description of an affine system over n variables.
struct AffineSolution {
    bool consistent = false;
    std::uint64_t particular = 0;
    std::vector<std::uint64_t> nullspace; // basis of the homogeneous part
};

AffineSolution solve_affine(std::vector<AffineRow> rows, unsigned n);

} // namespace mq
