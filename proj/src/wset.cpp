#include "mq/wset.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace mq {

namespace {

constexpr unsigned kMaxN = 64;
constexpr std::uint64_t kMaxTablePoints = 1ull << 26;

const std::array<std::array<std::uint64_t, kMaxN + 1>, kMaxN + 1>& binom_table() {
    static const auto table = [] {
        std::array<std::array<std::uint64_t, kMaxN + 1>, kMaxN + 1> t{};
        for (unsigned n = 0; n <= kMaxN; ++n) {
            t[n][0] = 1;
            for (unsigned k = 1; k <= n; ++k)
                t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
        }
        return t;
    }();
    return table;
}

// Visit all n-bit masks of weight exactly k in increasing numeric order.
template <typename F>
void for_each_weight_class(unsigned n, unsigned k, F&& f) {
    if (k > n)
        return;
    if (k == 0) {
        f(0ull);
        return;
    }
    std::uint64_t m = (1ull << k) - 1;
    const std::uint64_t count = binom(n, k);
    for (std::uint64_t i = 0; i < count; ++i) {
        f(m);
        if (i + 1 == count)
            break;
        const std::uint64_t c = m & (0 - m); // lowest set bit (Gosper)
        const std::uint64_t r = m + c;
        m = r | (((r ^ m) >> 2) / c);
    }
}

} // namespace

std::uint64_t binom(unsigned n, unsigned k) {
    if (n > kMaxN)
        throw std::domain_error("binom: n exceeds 64");
    if (k > n)
        return 0;
    return binom_table()[n][k];
}

std::uint64_t wset_size(unsigned n, unsigned w) {
    std::uint64_t s = 0;
    for (unsigned i = 0; i <= w && i <= n; ++i)
        s += binom(n, i);
    return s;
}

WSet::WSet(unsigned n, unsigned w) : n_(n), w_(w) {
    if (n > kMaxN)
        throw std::domain_error("WSet: n exceeds 64");
    if (w > n)
        throw std::domain_error("WSet: w exceeds n");
    class_offset_.resize(w + 2);
    class_offset_[0] = 0;
    for (unsigned k = 0; k <= w; ++k)
        class_offset_[k + 1] = class_offset_[k] + binom(n, k);
    size_ = class_offset_[w + 1];
}

std::uint64_t WSet::rank(std::uint64_t point) const {
    if (n_ < 64 && (point >> n_) != 0)
        throw std::domain_error("WSet::rank: point uses variables beyond n");
    const unsigned k = static_cast<unsigned>(__builtin_popcountll(point));
    if (k > w_)
        throw std::domain_error("WSet::rank: weight exceeds bound");
    std::uint64_t r = class_offset_[k];
    // colex rank within the weight class: sum C(p_i, i) over set positions
    std::uint64_t p = point;
    for (unsigned i = 1; p; ++i) {
        const unsigned pos = static_cast<unsigned>(__builtin_ctzll(p));
        r += binom(pos, i);
        p &= p - 1;
    }
    return r;
}

std::uint64_t WSet::unrank(std::uint64_t index) const {
    if (index >= size_)
        throw std::domain_error("WSet::unrank: index out of range");
    unsigned k = 0;
    while (index >= class_offset_[k + 1])
        ++k;
    std::uint64_t r = index - class_offset_[k];
    std::uint64_t point = 0;
    for (unsigned i = k; i >= 1; --i) {
        unsigned p = i - 1;
        while (p + 1 <= n_ - 1 && binom(p + 1, i) <= r)
            ++p;
        point |= 1ull << p;
        r -= binom(p, i);
    }
    return point;
}

namespace {

std::mutex g_cache_mutex;
std::map<std::pair<unsigned, unsigned>, std::unique_ptr<std::vector<std::uint64_t>>> g_points;
std::map<std::pair<unsigned, unsigned>, std::unique_ptr<WsetPairs>> g_pairs;

} // namespace

const std::vector<std::uint64_t>& wset_points(unsigned n, unsigned w) {
    if (w > n)
        throw std::domain_error("wset_points: w exceeds n");
    if (wset_size(n, w) > kMaxTablePoints)
        throw std::domain_error("wset_points: set too large to tabulate");
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto& slot = g_points[{n, w}];
    if (!slot) {
        auto pts = std::make_unique<std::vector<std::uint64_t>>();
        pts->reserve(wset_size(n, w));
        for (unsigned k = 0; k <= w; ++k)
            for_each_weight_class(n, k, [&](std::uint64_t m) { pts->push_back(m); });
        slot = std::move(pts);
    }
    return *slot;
}

const WsetPairs& wset_pairs(unsigned n, unsigned w) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto& slot = g_pairs[{n, w}];
    if (!slot) {
        WSet ws(n, w);
        if (ws.size() > kMaxTablePoints)
            throw std::domain_error("wset_pairs: set too large to tabulate");
        auto pairs = std::make_unique<WsetPairs>(n);
        std::uint64_t rank = 0;
        for (unsigned k = 0; k <= w; ++k) {
            for_each_weight_class(n, k, [&](std::uint64_t u) {
                std::uint64_t p = u;
                while (p) {
                    const unsigned j = static_cast<unsigned>(__builtin_ctzll(p));
                    (*pairs)[j].push_back({static_cast<std::uint32_t>(ws.rank(u ^ (1ull << j))),
                                           static_cast<std::uint32_t>(rank)});
                    p &= p - 1;
                }
                ++rank;
            });
        }
        slot = std::move(pairs);
    }
    return *slot;
}

} // namespace mq
