#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mq {

/// C(n, k) for n <= 64 (all values fit in uint64). Returns 0 when k > n.
std::uint64_t binom(unsigned n, unsigned k);

/// |W^n_w| = sum_{i<=w} C(n, i).
std::uint64_t wset_size(unsigned n, unsigned w);

/// The set W^n_w of n-bit points with Hamming weight <= w under the canonical
/// ordering: weight ascending, numeric (bit 0 = x1) within each weight class.
/// That makes W^n_w a prefix of W^n_{w'} for w <= w', so ranks are stable
/// under truncation.
class WSet {
public:
    WSet(unsigned n, unsigned w);

    unsigned n() const { return n_; }
    unsigned w() const { return w_; }
    std::uint64_t size() const { return size_; }

    /// Canonical index of a point; throws std::domain_error if its weight
    /// exceeds w or it uses bits beyond n.
    std::uint64_t rank(std::uint64_t point) const;

    /// Inverse of rank.
    std::uint64_t unrank(std::uint64_t index) const;

private:
    unsigned n_, w_;
    std::uint64_t size_;
    std::vector<std::uint64_t> class_offset_; // class_offset_[k] = |W^n_{k-1}|
};

/// All points of W^n_w in canonical order, built once and cached.
/// Refuses sets larger than 2^26 points.
const std::vector<std::uint64_t>& wset_points(unsigned n, unsigned w);

/// Butterfly pair table for the truncated Mobius transform on W^n_w:
/// entry [j] lists (rank(u ^ bit_j), rank(u)) for every point u containing
/// bit j. Cached per (n, w).
using WsetPairs = std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>;
const WsetPairs& wset_pairs(unsigned n, unsigned w);

} // namespace mq
