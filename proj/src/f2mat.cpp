#include "mq/f2mat.hpp"

#include <stdexcept>

namespace mq {

F2Matrix::F2Matrix(unsigned n) : n_(n), rows_(n, 0) {
    if (n > 64)
        throw std::domain_error("F2Matrix: n exceeds 64");
}

F2Matrix F2Matrix::identity(unsigned n) {
    F2Matrix m(n);
    for (unsigned i = 0; i < n; ++i)
        m.rows_[i] = 1ull << i;
    return m;
}

std::uint64_t F2Matrix::mul_vec(std::uint64_t v) const {
    std::uint64_t out = 0;
    for (unsigned i = 0; i < n_; ++i)
        out |= static_cast<std::uint64_t>(__builtin_parityll(rows_[i] & v)) << i;
    return out;
}

F2Matrix F2Matrix::mul(const F2Matrix& other) const {
    F2Matrix out(n_);
    for (unsigned i = 0; i < n_; ++i) {
        std::uint64_t acc = 0;
        std::uint64_t r = rows_[i];
        while (r) {
            const unsigned k = static_cast<unsigned>(__builtin_ctzll(r));
            acc ^= other.rows_[k];
            r &= r - 1;
        }
        out.rows_[i] = acc;
    }
    return out;
}

unsigned F2Matrix::rank() const {
    std::vector<std::uint64_t> rows = rows_;
    unsigned rank = 0;
    for (unsigned c = 0; c < n_ && rank < rows.size(); ++c) {
        unsigned pivot = rank;
        while (pivot < rows.size() && !((rows[pivot] >> c) & 1u))
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (unsigned r = 0; r < rows.size(); ++r)
            if (r != rank && ((rows[r] >> c) & 1u))
                rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

std::optional<F2Matrix> F2Matrix::inverse() const {
    // Gauss-Jordan on [M | I]
    std::vector<std::uint64_t> left = rows_;
    F2Matrix right = identity(n_);
    for (unsigned c = 0; c < n_; ++c) {
        unsigned pivot = c;
        while (pivot < n_ && !((left[pivot] >> c) & 1u))
            ++pivot;
        if (pivot == n_)
            return std::nullopt;
        std::swap(left[c], left[pivot]);
        std::swap(right.rows_[c], right.rows_[pivot]);
        for (unsigned r = 0; r < n_; ++r) {
            if (r != c && ((left[r] >> c) & 1u)) {
                left[r] ^= left[c];
                right.rows_[r] ^= right.rows_[c];
            }
        }
    }
    return right;
}

std::pair<F2Matrix, F2Matrix> sample_invertible(unsigned n, Rng& rng) {
    if (n == 0)
        throw std::domain_error("sample_invertible: n must be positive");
    const std::uint64_t mask = n >= 64 ? ~0ull : (1ull << n) - 1;
    for (;;) {
        F2Matrix m(n);
        for (unsigned i = 0; i < n; ++i)
            m.set_row(i, rng.next() & mask);
        if (auto inv = m.inverse())
            return {m, *inv};
    }
}

AffineSolution solve_affine(std::vector<AffineRow> rows, unsigned n) {
    AffineSolution sol;
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (unsigned c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && !((rows[p].a >> c) & 1u))
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[r], rows[p]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != r && ((rows[i].a >> c) & 1u)) {
                rows[i].a ^= rows[r].a;
                rows[i].b ^= rows[r].b;
            }
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i].b) // 0 = 1
            return sol;
    sol.consistent = true;

    std::uint64_t pivot_mask = 0;
    for (std::size_t i = 0; i < r; ++i)
        pivot_mask |= 1ull << pivot_col[i];
    // free variables at 0 give the particular solution
    for (std::size_t i = 0; i < r; ++i)
        if (rows[i].b)
            sol.particular |= 1ull << pivot_col[i];
    for (unsigned c = 0; c < n; ++c) {
        if ((pivot_mask >> c) & 1u)
            continue;
        std::uint64_t v = 1ull << c;
        for (std::size_t i = 0; i < r; ++i)
            if ((rows[i].a >> c) & 1u)
                v |= 1ull << pivot_col[i];
        sol.nullspace.push_back(v);
    }
    return sol;
}

} // namespace mq
