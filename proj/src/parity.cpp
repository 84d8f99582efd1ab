#include "mq/parity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mq/mobius.hpp"

namespace mq {

void Scoreboard::add(const BitVec& evals) {
    const std::uint64_t* w = evals.data();
    const std::uint64_t nw = evals.word_count();
    for (std::uint64_t wi = 0; wi < nw; ++wi) {
        std::uint64_t word = w[wi];
        while (word) {
            const unsigned b = static_cast<unsigned>(__builtin_ctzll(word));
            ++votes[(wi << 6) + b];
            word &= word - 1;
        }
    }
}

void Scoreboard::merge(const Scoreboard& other) {
    for (std::size_t i = 0; i < votes.size(); ++i)
        votes[i] += other.votes[i];
}

void RecursionProfile::record(unsigned level, bool brute, std::uint64_t wset_bits,
                              std::uint64_t sb_entries, std::uint64_t word_ops,
                              std::uint64_t scatter) {
    std::lock_guard<std::mutex> lock(mu_);
    if (levels_.size() <= level)
        levels_.resize(level + 1);
    LevelStats& s = levels_[level];
    s.level = level;
    s.nodes += 1;
    s.brute_nodes += brute ? 1 : 0;
    s.outer_wset_bits = wset_bits;
    s.scoreboard_entries = sb_entries;
    s.transform_word_ops += word_ops;
    s.scatter_ops += scatter;
}

std::vector<LevelStats> RecursionProfile::levels() const {
    std::lock_guard<std::mutex> lock(mu_);
    return levels_;
}

std::uint32_t default_trials(unsigned n) {
    return 48u * n + 1u;
}

double log2_wset_size(double n, double w) {
    if (w >= n)
        return n;
    // log2 sum_{i<=w} C(n,i) via logsumexp over lgamma
    double best = -1.0;
    std::vector<double> terms;
    const unsigned lo = w > 4096 ? static_cast<unsigned>(w) - 4096 : 0;
    for (unsigned i = lo; i <= static_cast<unsigned>(w); ++i) {
        const double t = (std::lgamma(n + 1) - std::lgamma(i + 1) - std::lgamma(n - i + 1)) /
                         std::log(2.0);
        terms.push_back(t);
        best = std::max(best, t);
    }
    double acc = 0.0;
    for (double t : terms)
        acc += std::exp2(t - best);
    return best + std::log2(acc);
}

namespace {

// floor(n1 - lambda*n) with the desk-scale progress rule: the inner block
// must shrink by at least one variable per level.
int shrink_inner(unsigned n1, double lambda, unsigned n) {
    int n2 = static_cast<int>(std::floor(static_cast<double>(n1) - lambda * n));
    if (n2 >= static_cast<int>(n1))
        n2 = static_cast<int>(n1) - 1;
    return n2;
}

std::uint32_t resolve_trials(const EngineParams& params, unsigned n) {
    const std::uint32_t t = params.trials ? params.trials : default_trials(n);
    if (t % 2 == 0)
        throw std::invalid_argument("trial count must be odd");
    if (t > 0xffff)
        throw std::invalid_argument("trial count exceeds the 16-bit scoreboard range");
    return t;
}

void run_trials(const PolySystem& sys, unsigned n1, unsigned w, int n2, unsigned ell,
                unsigned w_next, const EngineParams& params, const Rng& node_rng,
                std::uint32_t k_begin, std::uint32_t k_end, Scoreboard& board,
                RecursionProfile* profile, unsigned level) {
    const unsigned n = sys.n();
    EngineParams child_params = params;
    child_params.threads = 1;
    for (std::uint32_t k = k_begin; k < k_end; ++k) {
        Rng trial_rng = node_rng.fork(stream_tag(Stream::trial, k));
        const PolySystem combos = random_combinations(sys, ell, trial_rng);

        ParityVector v1 = mult_parity_count(combos, static_cast<unsigned>(n2), w_next,
                                            child_params,
                                            trial_rng.fork(stream_tag(Stream::recurse)),
                                            profile, level + 1);

        // Interpolate G(y, u) from its values on W^{n-n2}_{w_next}, then
        // evaluate it on W^{n-n1}_w x {0,1}^{n1-n2}.
        wset_transform(v1.bits, n - n2, w_next, 1);
        AnfPoly g = AnfPoly::from_table(n - n2, w_next, std::move(v1.bits));
        MixedTable evals = eval_on_mixed_domain(g, n1 - static_cast<unsigned>(n2), w);
        board.add(evals.bits);
    }
}

} // namespace

ParityVector brute_force_mult_parity(const PolySystem& sys, unsigned n1, unsigned w,
                                     RecursionProfile* profile, unsigned level) {
    const unsigned n = sys.n();
    if (n1 > n)
        throw std::invalid_argument("brute_force_mult_parity: n1 exceeds n");
    if (w > n - n1)
        throw std::invalid_argument("brute_force_mult_parity: w exceeds n - n1");

    const WSet outer(n - n1, w);
    const std::uint64_t domain = outer.size() << n1;
    std::uint64_t ops = 0;

    BitVec evals(domain, true);
    for (unsigned j = 0; j < sys.m(); ++j) {
        MixedTable pe = eval_on_mixed_domain(sys.poly(j), n1, w);
        evals.andn_with(pe.bits); // keep points where P_j vanishes
        ops += pe.bits.word_count();
    }

    ParityVector out{n - n1, w, BitVec(outer.size())};
    block_parity(evals.data(), outer.size(), n1, out.bits.data());
    if (profile)
        profile->record(level, true, outer.size(), 0, ops, 0);
    return out;
}

ParityVector mult_parity_count(const PolySystem& sys, unsigned n1, unsigned w,
                               const EngineParams& params, Rng rng,
                               RecursionProfile* profile, unsigned level) {
    const unsigned n = sys.n();
    const unsigned d = sys.d();
    if (n1 > n)
        throw std::invalid_argument("mult_parity_count: n1 exceeds n");
    w = std::min(w, n - n1);

    const int n2 = shrink_inner(n1, params.lambda, n);
    if (n2 <= 0)
        return brute_force_mult_parity(sys, n1, w, profile, level);

    const std::uint32_t t = resolve_trials(params, n);
    const unsigned ell = static_cast<unsigned>(n2) + 2;
    // Weight bound of the recursive instance: degree of G is at most
    // d*ell - n2 = n2(d-1) + 2d, clamped to the full residual cube.
    const unsigned w_next =
        std::min(d * ell - static_cast<unsigned>(n2), n - static_cast<unsigned>(n2));

    const WSet outer(n - n1, w);
    const std::uint64_t sb_entries = outer.size() << (n1 - static_cast<unsigned>(n2));
    if (sb_entries > (1ull << 32))
        throw std::domain_error("mult_parity_count: scoreboard exceeds the desk-scale cap");

    Scoreboard board(sb_entries);
    const unsigned threads = std::max(1u, params.threads);
    if (threads == 1 || t < 2 * threads) {
        run_trials(sys, n1, w, n2, ell, w_next, params, rng, 0, t, board, profile, level);
    } else {
        // Trials are independent; per-thread boards are summed afterwards,
        // which is order-insensitive, so results match the sequential run.
        std::vector<Scoreboard> parts;
        parts.reserve(threads);
        for (unsigned i = 0; i < threads; ++i)
            parts.emplace_back(sb_entries);
        std::vector<std::thread> pool;
        const std::uint32_t chunk = (t + threads - 1) / threads;
        for (unsigned i = 0; i < threads; ++i) {
            const std::uint32_t b = i * chunk;
            const std::uint32_t e = std::min<std::uint32_t>(t, b + chunk);
            if (b >= e)
                break;
            pool.emplace_back([&, i, b, e] {
                run_trials(sys, n1, w, n2, ell, w_next, params, rng, b, e, parts[i], profile,
                           level);
            });
        }
        for (auto& th : pool)
            th.join();
        for (const auto& part : parts)
            board.merge(part);
    }

    ParityVector out{n - n1, w, BitVec(outer.size())};
    const std::uint64_t group = 1ull << (n1 - static_cast<unsigned>(n2));
    for (std::uint64_t i = 0; i < outer.size(); ++i) {
        bool acc = false;
        for (std::uint64_t u = 0; u < group; ++u)
            acc ^= majority(board.votes[i * group + u], t);
        out.bits.set(i, acc);
    }
    if (profile)
        profile->record(level, false, outer.size(), sb_entries, 0, 0);
    return out;
}

bool parity_count(const PolySystem& sys, double kappa0, const EngineParams& params, Rng rng,
                  RecursionProfile* profile) {
    const unsigned n = sys.n();
    const unsigned d = std::max(1u, sys.d());
    if (!(kappa0 > 0.0) || kappa0 > 1.0 / (2.0 * d - 1.0) + 1e-12)
        throw std::invalid_argument("parity_count: kappa0 outside (0, 1/(2d-1)]");
    const unsigned n1 = static_cast<unsigned>(std::floor(kappa0 * n));
    ParityVector v = mult_parity_count(sys, n1, n - n1, params, std::move(rng), profile);
    return v.bits.parity();
}

std::vector<LevelPlan> plan_recursion(unsigned n, unsigned d, unsigned n1, unsigned w,
                                      const EngineParams& params) {
    std::vector<LevelPlan> plan;
    const std::uint32_t t = params.trials ? params.trials : default_trials(n);
    std::uint64_t nodes = 1;
    unsigned level = 0;
    unsigned cur_n1 = n1;
    unsigned cur_w = std::min(w, n - n1);
    for (;;) {
        LevelPlan lp;
        lp.level = level;
        lp.n1 = cur_n1;
        lp.w = cur_w;
        lp.nodes = nodes;
        lp.log2_outer_wset = log2_wset_size(n - cur_n1, cur_w);
        const int n2 = shrink_inner(cur_n1, params.lambda, n);
        lp.n2 = n2;
        if (n2 <= 0) {
            lp.brute = true;
            lp.ell = 0;
            plan.push_back(lp);
            break;
        }
        lp.ell = static_cast<unsigned>(n2) + 2;
        plan.push_back(lp);
        // next level
        cur_w = std::min(d * lp.ell - static_cast<unsigned>(n2), n - static_cast<unsigned>(n2));
        cur_n1 = static_cast<unsigned>(n2);
        ++level;
        nodes = (nodes > (~0ull) / t) ? ~0ull : nodes * t;
    }
    return plan;
}

} // namespace mq
